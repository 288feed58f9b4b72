"""Backtracking completion of partial multiplication tables."""
from __future__ import annotations


def complete_tables(n, fixed=None, domains=None):
    """Yield every associative completion of a partially specified n x n table.

    ``fixed`` maps cells (i, j) to values; ``domains`` maps cells to the values
    they may take (cells absent from both range over 0..n-1). Associativity is
    propagated eagerly: whenever three of the four cells of a triple are known
    the fourth is forced.
    """
    T = [[-1] * n for _ in range(n)]
    allowed = [[None] * n for _ in range(n)]
    for (i, j), vals in (domains or {}).items():
        allowed[i][j] = frozenset(vals)
    where = [[] for _ in range(n)]  # cells currently holding each value
    trail = []

    def check(a, b, c, queue):
        ab = T[a][b]
        if ab < 0:
            return True
        bc = T[b][c]
        if bc < 0:
            return True
        left = T[ab][c]
        right = T[a][bc]
        if left >= 0:
            if right >= 0:
                return left == right
            queue.append((a, bc, left))
        elif right >= 0:
            queue.append((ab, c, right))
        return True

    def propagate(queue):
        while queue:
            i, j, v = queue.pop()
            cur = T[i][j]
            if cur >= 0:
                if cur != v:
                    return False
                continue
            al = allowed[i][j]
            if al is not None and v not in al:
                return False
            T[i][j] = v
            where[v].append((i, j))
            trail.append((i, j))
            for c in range(n):
                if not check(i, j, c, queue):
                    return False
            for a in range(n):
                if not check(a, i, j, queue):
                    return False
            for a, b in tuple(where[i]):
                if not check(a, b, j, queue):
                    return False
            for b, c in tuple(where[j]):
                if not check(i, b, c, queue):
                    return False
        return True

    def undo(mark):
        while len(trail) > mark:
            i, j = trail.pop()
            where[T[i][j]].pop()
            T[i][j] = -1

    if not propagate([(i, j, v) for (i, j), v in sorted((fixed or {}).items())]):
        return
    cells = [(i, j) for i in range(n) for j in range(n)]

    def rec(start):
        pos = start
        while pos < len(cells) and T[cells[pos][0]][cells[pos][1]] >= 0:
            pos += 1
        if pos == len(cells):
            yield tuple(tuple(row) for row in T)
            return
        i, j = cells[pos]
        vals = sorted(allowed[i][j]) if allowed[i][j] is not None else range(n)
        for v in vals:
            mark = len(trail)
            if propagate([(i, j, v)]):
                yield from rec(pos + 1)
            undo(mark)

    yield from rec(0)
