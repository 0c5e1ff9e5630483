"""Coefficient rings for the invariant: F2, F_p and Z.

Scalars are plain Python ints.  A ring object normalizes scalars into a
canonical form (0..p-1 for F_p, arbitrary ints for Z) and knows which
scalars are units.  Everything downstream is generic over these three.
"""


class Ring:
    """Base coefficient ring interface."""

    name = "?"
    char = 0

    def normalize(self, c: int) -> int:
        raise NotImplementedError

    def add(self, a: int, b: int) -> int:
        return self.normalize(a + b)

    def mul(self, a: int, b: int) -> int:
        return self.normalize(a * b)

    def neg(self, a: int) -> int:
        return self.normalize(-a)

    def is_unit(self, a: int) -> bool:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    @property
    def is_field(self) -> bool:
        return self.char != 0 or self.name == "Q"

    def __repr__(self):
        return self.name


class F2(Ring):
    name = "F2"
    char = 2

    def normalize(self, c):
        return c & 1

    def is_unit(self, a):
        return a & 1 == 1

    def inv(self, a):
        if a & 1:
            return 1
        raise ZeroDivisionError("not a unit in F2")


class Fp(Ring):
    def __init__(self, p: int):
        if p < 2 or p >= 1 << 16:
            raise ValueError(f"prime out of range: {p}")
        for d in range(2, int(p**0.5) + 1):
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.char = p

    def normalize(self, c):
        return c % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"not a unit in F{self.p}")
        return pow(a, self.p - 2, self.p)


class ZZ(Ring):
    name = "Z"
    char = 0

    def normalize(self, c):
        return c

    def is_unit(self, a):
        return a == 1 or a == -1

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    @property
    def is_field(self):
        return False


F2_RING = F2()
Z_RING = ZZ()


def ring_from_spec(spec: str) -> Ring:
    """Parse a ring name: ``f2``, ``fp:<p>`` or ``z``."""
    s = spec.strip().lower()
    if s == "f2":
        return F2_RING
    if s == "z":
        return Z_RING
    if s.startswith("fp:"):
        return Fp(int(s[3:]))
    raise ValueError(f"unknown ring spec {spec!r} (want f2 | fp:<p> | z)")
