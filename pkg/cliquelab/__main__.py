#!/usr/bin/env python3

import sys
from cliquelab.cli import main

sys.exit(main())
