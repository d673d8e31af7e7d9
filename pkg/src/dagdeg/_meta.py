# Auto-generated from pyproject.toml by `dev.py emit-meta` - do not edit manually.

APP_NAME = "dagdeg"
APP_DESCRIPTION = "Extremal dag, Kostant and PBW degrees for root systems."
VERSION = "0.1.0"
LICENSE = "MIT OR Apache-2.0"
HOMEPAGE = ""
MIN_PYTHON = "3.11"
