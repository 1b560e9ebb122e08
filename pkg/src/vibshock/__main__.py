from vibshock.cli import main
import sys
sys.exit(main())
