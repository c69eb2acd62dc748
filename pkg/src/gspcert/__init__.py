# Copyright (c) 2020 Wilhelm Shen. See LICENSE for details.

"""
gspcert builds and verifies explicit group-theoretic certificates for
mod-p Galois representations into GSp(2g, F_p) whose inertia images are
too large to come from abelian varieties.
"""

__version__ = '0.1.0.dev1'
