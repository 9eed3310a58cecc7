#!/usr/bin/env python3
"""Run the full verification pipeline (same as `qcontract report`)."""

import sys

from qcontract.cli import main

if __name__ == "__main__":
    sys.exit(main(["report", *sys.argv[1:]]))
