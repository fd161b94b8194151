"""
Entry point for the hypertoric toolkit.

Runs the command-line front end; the configuration class is selected by HYPO_ENV.
"""

import sys

from hypertoric.views.cli import main

if __name__ == "__main__":
    sys.exit(main())
