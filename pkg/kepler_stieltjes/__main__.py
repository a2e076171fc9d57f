import sys

from kepler_stieltjes.scripts.ks.ks import main

if __name__ == "__main__":
    sys.exit(main())
