import sys

from hookbias.cli import main

sys.exit(main())
