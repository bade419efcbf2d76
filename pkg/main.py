import sys

from src.cli import main as cli_main


def main():
    """Run the separator-treewidth command line."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
