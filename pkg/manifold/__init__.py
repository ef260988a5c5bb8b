# Needed for the build system to identify this directory as a package