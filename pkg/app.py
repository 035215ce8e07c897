"""Command-line entrypoint for the Invroute toolkit."""
from __future__ import annotations

from mmirp_cli.manage import manage_cli

if __name__ == "__main__":
    # `python app.py --config prod bench --out report.csv`
    manage_cli()
