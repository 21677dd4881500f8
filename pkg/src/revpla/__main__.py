"""Allow ``python -m revpla``."""

from revpla.cli.main import main

main()
