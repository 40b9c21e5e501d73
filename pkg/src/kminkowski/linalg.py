"""Exact linear algebra over the coefficient ring.

Two routes:

* ``SparseEchelon`` works over Q(i) on *specialised* vectors.  Every relation
  in this package is homogeneous once lam = 1/kappa is given weight 1, and for
  homogeneous vectors the rank (and span membership) over the fraction field
  Q(i)(lam) equals the rank after substituting any nonzero lam, because the
  coefficient matrix factors as D_row(lam) * C * D_col(lam) with C constant.
  We substitute lam = -i, which makes i/kappa equal to 1, so most systems end
  up with real rational entries.

* ``fraction_free_rank`` is a Bareiss elimination directly over Laurent
  polynomials; it needs no homogeneity and is used for inhomogeneous input
  and as an independent cross-check.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .scalars import GaussianRational, Scalar, ZERO

__all__ = [
    "NotHomogeneous",
    "LAMBDA0",
    "specialize",
    "unspecialize",
    "SparseEchelon",
    "fraction_free_rank",
    "fraction_free_contains",
]

Vector = Dict[Hashable, GaussianRational]

#: value substituted for lam = 1/kappa on the fast path
LAMBDA0 = GaussianRational(0, -1)
_POW = [GaussianRational(1), GaussianRational(0, -1), GaussianRational(-1), GaussianRational(0, 1)]


def _lam_pow(k: int) -> GaussianRational:
    # (-i)**k
    return _POW[k % 4]


class NotHomogeneous(ValueError):
    pass


def specialize(
    terms: Mapping[Hashable, Scalar], weight: Callable[[Hashable], int]
) -> Tuple[Vector, Optional[int]]:
    """Vector of values at lam = -i plus the common weight (None for zero).

    Raises NotHomogeneous when the terms do not share a single weight.
    """
    w0 = None
    out: Vector = {}
    for key, c in terms.items():
        wk = weight(key)
        val = None
        for e, v in c.terms.items():
            w = wk + e
            if w0 is None:
                w0 = w
            elif w != w0:
                raise NotHomogeneous(f"mixed weights {w0} and {w}")
            t = v * _lam_pow(e)
            val = t if val is None else val + t
        if val:
            out[key] = val
    return out, w0


def unspecialize(vec: Mapping[Hashable, GaussianRational], total_weight: int, weight: Callable) -> Dict:
    """Inverse of :func:`specialize` for a vector known to have ``total_weight``."""
    out = {}
    for key, v in vec.items():
        e = total_weight - weight(key)
        out[key] = Scalar({e: v * _lam_pow(-e)})
    return out


class SparseEchelon:
    """Incremental echelon basis of sparse vectors over an exact field.

    ``key`` orders columns; the pivot of each stored row is its largest column,
    so reduction leaves a remainder supported on small columns.  The remainder
    of full reduction is the canonical representative of the coset.
    """

    def __init__(self, key: Callable[[Hashable], object] = lambda c: c):
        self.key = key
        self.pivots: Dict[Hashable, Vector] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[Hashable, GaussianRational]) -> Vector:
        row = dict(row)
        pivots = self.pivots
        key = self.key
        while True:
            cands = [c for c in row if c in pivots]
            if not cands:
                return row
            c = max(cands, key=key) if len(cands) > 1 else cands[0]
            f = row[c]
            for k, v in pivots[c].items():
                cur = row.get(k)
                nv = -(f * v) if cur is None else cur - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)

    def add(self, row: Mapping[Hashable, GaussianRational]) -> bool:
        """Insert a row; returns True when it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        c = max(r, key=self.key)
        inv = r[c].inverse()
        self.pivots[c] = {k: v * inv for k, v in r.items()}
        return True

    def contains(self, row: Mapping[Hashable, GaussianRational]) -> bool:
        return not self.reduce(row)

    def pivot_columns(self) -> List[Hashable]:
        return sorted(self.pivots, key=self.key)


# ---- fraction-free route over Laurent polynomials --------------------------


def fraction_free_rank(rows: Sequence[Mapping[Hashable, Scalar]]) -> int:
    """Rank over Q(i)(lam) by Bareiss elimination with exact Laurent division."""
    cols: List[Hashable] = []
    seen = set()
    for r in rows:
        for c, v in r.items():
            if v and c not in seen:
                seen.add(c)
                cols.append(c)
    m = [[r.get(c, ZERO) for c in cols] for r in rows if any(r.get(c, ZERO) for c in cols)]
    nrows, ncols = len(m), len(cols)
    rank = 0
    prev = Scalar.const(1)
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row = m[r]
            prow = m[rank]
            for j in range(col + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]).divmod_exact(prev)
            row[col] = ZERO
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def fraction_free_contains(rows: Sequence[Mapping[Hashable, Scalar]], target: Mapping[Hashable, Scalar]) -> bool:
    if not any(v for v in target.values()):
        return True
    return fraction_free_rank(list(rows) + [target]) == fraction_free_rank(rows)
