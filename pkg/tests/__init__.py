# Test package for olgsaving
