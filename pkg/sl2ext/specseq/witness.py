"""A small bicomplex whose spectral sequence does not collapse at E_2.

One-dimensional cells at (0,1), (1,0), (1,1) and (2,0), with the vertical map
(1,0) -> (1,1) and the horizontal maps (0,1) -> (1,1) and (1,0) -> (2,0) all the
identity. E_2 survives at (0,1) and (2,0), d_2 joins them and E_3 = 0.
"""

from __future__ import annotations

from .bicomplex import DEFAULT_MODULUS, Bicomplex


def witness(modulus: int = DEFAULT_MODULUS) -> Bicomplex:
    return Bicomplex.build(
        width=3,
        height=2,
        dims={(0, 1): 1, (1, 0): 1, (1, 1): 1, (2, 0): 1},
        d0={(1, 0): [[1]]},
        d1={(0, 1): [[1]], (1, 0): [[1]]},
        modulus=modulus,
    )


def square(modulus: int = DEFAULT_MODULUS, *, flip: bool = False) -> Bicomplex:
    """A 2x2 grid of lines with identity maps; ``flip`` breaks the anticommuting square."""
    return Bicomplex.build(
        width=2,
        height=2,
        dims={(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1},
        d0={(0, 0): [[1]], (1, 0): [[1 if flip else -1]]},
        d1={(0, 0): [[1]], (0, 1): [[1]]},
        modulus=modulus,
    )
