"""Prime-power coding of finite sequences.

``<x0, ..., xk>`` is ``p0^x0 * ... * pk^xk`` with ``p_i`` the ``i``-th
prime (``p0 = 2``).  Component extraction is exponent extraction, so a
code does not record trailing zero entries; ``seq_len`` therefore only
measures sequences whose entries are all positive.
"""

from __future__ import annotations

from math import prod
from typing import Callable, Iterable

from sympy import factorint, multiplicity, sieve

from ..errors import ValueTooLarge

NatFn = Callable[[int], int]

# Results are refused beyond these sizes rather than exhausting memory.
MAX_BITS = 1 << 26
MAX_PRIME_INDEX = 10**7


def check_power(base: int, e: int) -> None:
    if base > 1 and e * base.bit_length() > MAX_BITS:
        raise ValueTooLarge(f"a power with a {e.bit_length()}-bit exponent exceeds {MAX_BITS} bits")


def power(base: int, e: int) -> int:
    check_power(base, e)
    return base**e


def nth_prime(i: int) -> int:
    """``p_i``, counting from ``p_0 = 2``."""
    if i > MAX_PRIME_INDEX:
        raise ValueTooLarge(f"prime index {i} exceeds {MAX_PRIME_INDEX}")
    return int(sieve[i + 1])


def encode_seq(xs: Iterable[int]) -> int:
    return prod((power(nth_prime(i), x) for i, x in enumerate(xs)), start=1)


def component(a: int, i: int) -> int:
    """``(a)_i``: the exponent of ``p_i`` in ``a``; 0 when ``a`` is 0."""
    # p_i >= i + 2, so primes past a cannot divide it
    if a == 0 or i + 2 > a:
        return 0
    return int(multiplicity(nth_prime(i), a))


def _factor_exponents(a: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in factorint(a).items()} if a > 1 else {}


def seq_len(a: int) -> int:
    """``lh(a)``: how many ``i < a`` have ``(a)_i > 0``."""
    # p_i | a forces p_i <= a and hence i < a, so every prime factor counts.
    return len(_factor_exponents(a)) if a > 0 else 0


def decode_seq(a: int, n: int) -> list[int]:
    return [component(a, i) for i in range(n)]


def concat(a: int, b: int) -> int:
    """``a * b``: ``a`` times the components of ``b`` shifted past ``lh(a)``."""
    la = seq_len(a)
    return a * prod(
        (power(nth_prime(la + i), component(b, i)) for i in range(seq_len(b))), start=1
    )


def bar_code(f: NatFn, x: int) -> int:
    """Course-of-values code with exponents ``f(i) + 1``, for ``i < x``."""
    return prod((power(nth_prime(i), f(i) + 1) for i in range(x)), start=1)


def tilde_code(f: NatFn, x: int) -> int:
    return prod((power(nth_prime(i), f(i)) for i in range(x)), start=1)


def join(a: int, b: int) -> int:
    """``a o b``: componentwise maximum of exponents below ``max(a, b)``."""
    # Any prime dividing a positive argument has index below that argument,
    # so the bound never cuts off a nonzero component.
    ea, eb = _factor_exponents(a), _factor_exponents(b)
    return prod((p ** max(ea.get(p, 0), eb.get(p, 0)) for p in ea.keys() | eb.keys()), start=1)


def iterate(x: int, step: NatFn, y: int) -> list[int]:
    """``[beta(0), ..., beta(y)]`` for ``beta(0) = x``, ``beta(i') = step(<beta(i), i>)``."""
    out = [x]
    for i in range(y):
        out.append(step(encode_seq((out[-1], i))))
    return out


def course_of_values(x: int, alpha: NatFn, y: int) -> int:
    """The code ``<beta(0), ..., beta(y)>`` of the iteration in :func:`iterate`."""
    return encode_seq(iterate(x, alpha, y))


def is_course_of_values(x: int, alpha: NatFn, y: int, v: int) -> bool:
    """``(v)_0 = x`` and ``(v)_{i'} = alpha(<(v)_i, i>)`` for every ``i < y``."""
    if component(v, 0) != x:
        return False
    return all(
        component(v, i + 1) == alpha(encode_seq((component(v, i), i))) for i in range(y)
    )
