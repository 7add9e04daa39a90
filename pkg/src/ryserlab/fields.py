"""Finite fields GF(q) as explicit operation tables.

Prime orders use arithmetic mod p. Proper prime powers are built as
polynomials over GF(p) reduced by a fixed irreducible modulus; an element is
the integer whose base-p digits are its coefficients (lowest degree first).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Monic irreducible moduli, coefficients lowest degree first (leading 1 included).
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, (1, 0, 1)),  # x^2 + 1
    16: (2, (1, 1, 0, 0, 1)),  # x^4 + x + 1
    25: (5, (2, 0, 1)),  # x^2 + 2
    27: (3, (1, 2, 0, 1)),  # x^3 + 2x + 1
    32: (2, (1, 0, 1, 0, 0, 1)),  # x^5 + x^2 + 1
}

MAX_PRIME = 31


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            return (p, k) if rest == 1 else None
    return None


def supported_orders() -> list[int]:
    primes = [p for p in range(2, MAX_PRIME + 1) if _is_prime(p)]
    return sorted(set(primes) | set(IRREDUCIBLE))


@dataclass(frozen=True)
class FieldTables:
    q: int
    p: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    inv: tuple[int | None, ...]  # inv[0] is None

    @property
    def characteristic(self) -> int:
        return self.p

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def div(self, a: int, b: int) -> int:
        ib = self.inv[b]
        if ib is None:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.q)
        return self.mul[a][ib]


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, d = divmod(x, p)
        out.append(d)
    return out


def _undigits(ds: list[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _poly_mul_mod(a: list[int], b: list[int], p: int, modulus: tuple[int, ...]) -> list[int]:
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # modulus is monic: reduce from the top degree down
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i, mi in enumerate(modulus):
                prod[deg - k + i] = (prod[deg - k + i] - c * mi) % p
    return prod[:k]


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldTables:
    """Build addition/multiplication/inverse tables for GF(q).

    Raises FieldError if q is not a prime power, or is a prime power outside
    the supported set (primes up to 31 and the orders in ``IRREDUCIBLE``).
    """
    if not isinstance(q, int) or q < 2:
        raise FieldError(f"field order must be an integer >= 2, got {q!r}")
    pk = _prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    p, k = pk
    if k == 1:
        if p > MAX_PRIME:
            raise FieldError(f"prime order {q} exceeds supported maximum {MAX_PRIME}")
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
    else:
        if q not in IRREDUCIBLE:
            raise FieldError(
                f"prime power {q} has no tabulated irreducible polynomial "
                f"(supported: {supported_orders()})"
            )
        _, modulus = IRREDUCIBLE[q]
        digs = [_digits(x, p, k) for x in range(q)]
        add = tuple(
            tuple(_undigits([(u + v) % p for u, v in zip(digs[a], digs[b])], p) for b in range(q))
            for a in range(q)
        )
        mul = tuple(
            tuple(_undigits(_poly_mul_mod(digs[a], digs[b], p, modulus), p) for b in range(q))
            for a in range(q)
        )
    neg = tuple(add[a].index(0) for a in range(q))
    inv: list[int | None] = [None]
    for a in range(1, q):
        row = mul[a]
        if 1 not in row:
            raise FieldError(f"modulus for GF({q}) is reducible: {a} has no inverse")
        inv.append(row.index(1))
    return FieldTables(q=q, p=p, add=add, mul=mul, neg=neg, inv=tuple(inv))


def check_axioms(f: FieldTables) -> list[str]:
    """Exhaustively check the field axioms; returns a list of failures (empty if none)."""
    q, add, mul = f.q, f.add, f.mul
    bad = []
    r = range(q)
    for a in r:
        if add[a][0] != a:
            bad.append(f"0 is not additive identity for {a}")
        if mul[a][1] != a:
            bad.append(f"1 is not multiplicative identity for {a}")
        if add[a][f.neg[a]] != 0:
            bad.append(f"neg[{a}] wrong")
        if a and mul[a][f.inv[a]] != 1:
            bad.append(f"inv[{a}] wrong")
        for b in r:
            if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                bad.append(f"commutativity fails at ({a},{b})")
            for c in r:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    bad.append(f"additive associativity fails at ({a},{b},{c})")
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    bad.append(f"multiplicative associativity fails at ({a},{b},{c})")
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    bad.append(f"distributivity fails at ({a},{b},{c})")
    return bad
