"""GF(2) linear algebra on machine-word bitsets.

Vectors are Python ints used as bitsets (bit i = coordinate i); matrices are
lists of such ints.  Arbitrary-precision ints give word-packed XOR for free,
which is all the throughput these complexes need (a few hundred coordinates).

All routines are deterministic: pivots are chosen left-to-right and rows are
processed in the order given, so identical inputs produce identical outputs.
"""

from __future__ import annotations


class InconsistentSystem(ValueError):
    """Raised when an affine system A*x = b has no solution."""


def rank(rows: list[int]) -> int:
    """Rank of the row space over GF(2)."""
    basis: list[int] = []
    for row in rows:
        row = _reduce(row, basis)
        if row:
            _insert(row, basis)
    return len(basis)


def _reduce(vec: int, basis: list[int]) -> int:
    """Reduce vec against a basis kept sorted by decreasing leading bit."""
    for b in basis:
        if vec ^ b < vec:
            vec ^= b
    return vec


def _insert(vec: int, basis: list[int]) -> None:
    # keep decreasing leading-bit order so _reduce is a single pass
    lead = vec.bit_length()
    for pos, b in enumerate(basis):
        if b.bit_length() < lead:
            basis.insert(pos, vec)
            return
    basis.append(vec)


def in_span(vec: int, vectors: list[int]) -> bool:
    """Whether vec lies in the GF(2) span of vectors."""
    basis: list[int] = []
    for v in vectors:
        v = _reduce(v, basis)
        if v:
            _insert(v, basis)
    return _reduce(vec, basis) == 0


def coords_in(vec: int, vectors: list[int]) -> int | None:
    """Express vec as an XOR of the given vectors.

    Returns a bitmask over the vector list (bit t set = vectors[t] used), or
    None when vec is outside the span.  The combination returned is the one
    produced by greedy left-to-right elimination, hence deterministic.
    """
    basis: list[tuple[int, int]] = []  # (vector, combination mask)
    for t, v in enumerate(vectors):
        combo = 1 << t
        for b, c in basis:
            if v ^ b < v:
                v ^= b
                combo ^= c
        if v:
            lead = v.bit_length()
            pos = next((p for p, (b, _) in enumerate(basis) if b.bit_length() < lead), len(basis))
            basis.insert(pos, (v, combo))
    combo = 0
    for b, c in basis:
        if vec ^ b < vec:
            vec ^= b
            combo ^= c
    return combo if vec == 0 else None


def solve_affine(rows: list[int], rhs: list[int], ncols: int) -> tuple[int, list[int]]:
    """Solve the affine system given by rows (bitmask per equation) and rhs bits.

    Returns (base, kernel_basis): base is the particular solution with every
    free variable set to 0; kernel basis vectors are ordered by ascending free
    column.  Raises InconsistentSystem when no solution exists.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs length mismatch")
    marker = 1 << ncols
    aug = [row | (marker if b & 1 else 0) for row, b in zip(rows, rhs)]
    return _solve_rref(aug, ncols, marker)


def _solve_rref(aug: list[int], ncols: int, marker: int) -> tuple[int, list[int]]:
    work = list(aug)
    pivot_of_row: list[int] = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((t for t in range(r, len(work)) if work[t] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for t in range(len(work)):
            if t != r and work[t] & bit:
                work[t] ^= work[r]
        pivot_of_row.append(col)
        r += 1
        if r == len(work):
            break
    for t in range(r, len(work)):
        if work[t] & marker:
            raise InconsistentSystem("no solution over GF(2)")
    pivot_cols = set(pivot_of_row)
    base = 0
    for t, col in enumerate(pivot_of_row):
        if work[t] & marker:
            base |= 1 << col
    kernel: list[int] = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = 1 << free
        fbit = 1 << free
        for t, col in enumerate(pivot_of_row):
            if work[t] & fbit:
                vec |= 1 << col
        kernel.append(vec)
    return base, kernel


def column_reduce(cols: list[int]) -> tuple[list[int], list[int]]:
    """Reduce a list of column vectors left-to-right.

    Returns (image_basis, kernel_combos): image_basis spans the same space as
    cols; each kernel combo is a bitmask over the column list describing an
    independent combination that sums to zero.  Together they encode image and
    kernel of the linear map sending unit vector t to cols[t].
    """
    basis: list[tuple[int, int]] = []  # (reduced vector, combination mask)
    image: list[int] = []
    kernel: list[int] = []
    for t, v in enumerate(cols):
        combo = 1 << t
        for b, c in basis:
            if v ^ b < v:
                v ^= b
                combo ^= c
        if v:
            image.append(cols[t])
            lead = v.bit_length()
            pos = next((p for p, (b, _) in enumerate(basis) if b.bit_length() < lead), len(basis))
            basis.insert(pos, (v, combo))
        else:
            kernel.append(combo)
    return image, kernel


def extend_basis(base: list[int], candidates: list[int]) -> list[int]:
    """Candidates (in order) that extend span(base) to span(base + candidates)."""
    basis: list[int] = []
    for v in base:
        v = _reduce(v, basis)
        if v:
            _insert(v, basis)
    added: list[int] = []
    for v in candidates:
        red = _reduce(v, basis)
        if red:
            added.append(v)
            _insert(red, basis)
    return added


def intersection_dim(a: list[int], b: list[int]) -> int:
    """Dimension of span(a) ∩ span(b)."""
    ra = rank(a)
    rb = rank(b)
    return ra + rb - rank(list(a) + list(b))
