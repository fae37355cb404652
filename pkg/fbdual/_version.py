# this variable is automatically overwritten, do not edit
__version__ = "0.0.0-dev"
