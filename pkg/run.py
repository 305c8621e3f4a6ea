#!/usr/bin/env python3
import sys
from negsssp.cli import main
sys.exit(main())
