"""Exact Hopf-formula homology for nilpotent group presentations.

The package has three layers:

* finite groups given by multiplication tables, with a bar-resolution
  homology oracle (`groups`, `bar`);
* free nilpotent groups of finite rank and class, with collection-based
  normal forms and triangular subgroup sequences (`freenil`, `pcseq`);
* Hopf-formula evaluation on presentation cubes, localized variants, and
  categorical Galois checks (`cubes`, `hopf`, `galois`).
"""

__version__ = "0.1.0"
