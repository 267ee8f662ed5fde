import sys

from eqnv.cli.main import main

sys.exit(main())
