"""
Codecosets

This file is an intermediary so that `python main.py <subcommand> ...`
behaves like the installed `codecosets` command.
"""

import sys

from codecosets_cli import main

if __name__ == "__main__":
    sys.exit(main())
