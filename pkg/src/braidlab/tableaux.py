"""Partitions and Young tableau dimension counting.

Standard-tableau dimensions come from the hook length formula in exact
integer arithmetic; semistandard counts come from backtracking enumeration,
so every number is traceable to first principles.  These counts predict the
eigenspace dimensions and multiplicities of the invariant open chain.
"""

from math import comb, factorial

from .errors import ValidationError

Partition = tuple[int, ...]


def check_partition(parts) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise ValidationError(f"partition parts must be positive, got {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValidationError(f"partition must be weakly decreasing, got {parts}")
    return parts


def partitions_of(N: int, max_rows: int | None = None) -> list[Partition]:
    """All partitions of N (optionally with at most max_rows parts), in
    reverse-lexicographic order: (N) first, (1,...,1) last."""
    if N < 1:
        raise ValidationError("N must be >= 1")
    out = []

    def descend(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if max_rows is not None and len(prefix) == max_rows:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            descend(remaining - part, part, prefix)
            prefix.pop()

    descend(N, N, [])
    return out


def hook_lengths(shape: Partition) -> list[list[int]]:
    shape = check_partition(shape)
    cols = [sum(1 for r in shape if r > j) for j in range(shape[0])]
    return [[(row - j) + (cols[j] - i) - 1 for j in range(row)]
            for i, row in enumerate(shape)]


def syt_dim(shape: Partition) -> int:
    """Number of standard Young tableaux of the given shape (hook length formula)."""
    shape = check_partition(shape)
    N = sum(shape)
    denom = 1
    for row in hook_lengths(shape):
        for h in row:
            denom *= h
    quotient, rem = divmod(factorial(N), denom)
    if rem:
        raise ValidationError(f"hook product {denom} does not divide {N}!")
    return quotient


def _ssyt_count(shape: Partition, n: int, content: tuple[int, ...] | None) -> int:
    """Backtracking count of semistandard fillings with entries in [1, n].

    Rows weakly increase, columns strictly increase.  When ``content`` is
    given, entry i must appear exactly content[i-1] times.
    """
    rows = len(shape)
    if rows > n:
        return 0
    remaining = list(content) if content is not None else None

    def fill(i, j, above_rows):
        # above_rows[r][j] = entry at row r, column j (rows already filled up to (i, j))
        if i == rows:
            return 1
        if j == shape[i]:
            return fill(i + 1, 0, above_rows)
        lo = 1
        if j > 0:
            lo = max(lo, above_rows[i][j - 1])
        if i > 0:
            lo = max(lo, above_rows[i - 1][j] + 1)
        total = 0
        for v in range(lo, n + 1):
            if remaining is not None:
                if v > len(remaining) or remaining[v - 1] == 0:
                    continue
                remaining[v - 1] -= 1
            above_rows[i].append(v)
            total += fill(i, j + 1, above_rows)
            above_rows[i].pop()
            if remaining is not None:
                remaining[v - 1] += 1
        return total

    return fill(0, 0, [[] for _ in range(rows)])


def ssyt_dim(shape: Partition, n: int) -> int:
    """Number of semistandard Young tableaux of the given shape with entries
    in [1, n]; the dimension of the corresponding irreducible gl_n module."""
    if n < 1:
        raise ValidationError("alphabet size n must be >= 1")
    shape = check_partition(shape)
    return _ssyt_count(shape, n, None)


def kostka(shape: Partition, content) -> int:
    """Kostka number: semistandard tableaux of the given shape and content."""
    shape = check_partition(shape)
    content = tuple(int(c) for c in content)
    if any(c < 0 for c in content):
        raise ValidationError("content entries must be nonnegative")
    if sum(shape) != sum(content):
        raise ValidationError(f"|shape|={sum(shape)} and |content|={sum(content)} differ")
    return _ssyt_count(shape, len(content), content)


def ordered_sequence_count(n: int, N: int) -> int:
    """Number of weakly increasing length-N sequences over [1, n]:
    prod_{k=n}^{N+n-1} k / N!, i.e. C(n+N-1, N)."""
    return comb(n + N - 1, N)


def schur_weyl_check(n: int, N: int) -> bool:
    """True iff sum over partitions (rows <= n) of syt_dim * ssyt_dim is n^N."""
    if n < 1 or N < 1:
        raise ValidationError("n and N must be >= 1")
    total = sum(syt_dim(lam) * ssyt_dim(lam, n) for lam in partitions_of(N, max_rows=n))
    return total == n ** N


def dimension_table(n: int, N: int) -> list[dict]:
    """Rows {partition, syt_dim, ssyt_dim} for every partition of N with <= n rows."""
    return [{"partition": list(lam), "syt_dim": syt_dim(lam), "ssyt_dim": ssyt_dim(lam, n)}
            for lam in partitions_of(N, max_rows=n)]
