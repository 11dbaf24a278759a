import sys

from holewidth.cli import main

if __name__ == "__main__":
    sys.exit(main())
