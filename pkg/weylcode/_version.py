"""Set the current weylcode version."""

VERSION = "0.1.0"
