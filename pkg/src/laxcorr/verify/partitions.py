"""Moments and cumulants over set partitions."""

from math import factorial


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _prod(vals, one):
    out = one
    for v in vals:
        out = out * v
    return out


def cumulants_to_moments(cum, variables, one=1):
    """moment(S) = sum over partitions of S of the product of block cumulants.

    ``cum`` maps frozensets of variables to values.
    """
    return {
        S: sum((_prod((cum[frozenset(b)] for b in p), one) for p in set_partitions(sorted(S))), 0 * one)
        for S in _subsets(variables)
    }


def moments_to_cumulants(mom, variables, one=1):
    """Moebius inversion: cum(S) = sum_pi (-1)^(|pi|-1) (|pi|-1)! prod_B mom(B)."""
    out = {}
    for S in _subsets(variables):
        acc = 0 * one
        for p in set_partitions(sorted(S)):
            k = len(p)
            c = (-1) ** (k - 1) * factorial(k - 1)
            acc = acc + c * _prod((mom[frozenset(b)] for b in p), one)
        out[S] = acc
    return out


def _subsets(variables):
    variables = list(variables)
    n = len(variables)
    for mask in range(1, 1 << n):
        yield frozenset(v for i, v in enumerate(variables) if mask >> i & 1)
