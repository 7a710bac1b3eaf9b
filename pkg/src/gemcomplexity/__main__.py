import sys

from gemcomplexity.cli import main

sys.exit(main())
