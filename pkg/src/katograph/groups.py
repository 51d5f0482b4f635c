"""Symbolic arithmetic over Dickson's classification of finite subgroups of PGL2.

Group symbols are immutable and always stored in canonical form:

* ``B(0, n)`` is spelled ``Cyclic(n)``, ``Cyclic(1)`` is spelled ``Trivial``;
* ``B(t, 1)`` is the elementary abelian group ``E_t`` (kept as a Borel symbol);
* ``Dihedral(1)`` is rejected outright (it is ``Cyclic(2)``).

Everything here is a pure function of its arguments; no state is shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

KIND_TRIVIAL = "trivial"
KIND_CYCLIC = "cyclic"
KIND_DIHEDRAL = "dihedral"
KIND_BOREL = "borel"
KIND_PROJ_LINEAR = "proj_linear"
KIND_TETRAHEDRAL = "tetrahedral"
KIND_OCTAHEDRAL = "octahedral"
KIND_ICOSAHEDRAL = "icosahedral"

_POLYHEDRAL = (KIND_TETRAHEDRAL, KIND_OCTAHEDRAL, KIND_ICOSAHEDRAL)
_ALL_KINDS = (
    KIND_TRIVIAL,
    KIND_CYCLIC,
    KIND_DIHEDRAL,
    KIND_BOREL,
    KIND_PROJ_LINEAR,
) + _POLYHEDRAL


class SymbolError(ValueError):
    """Raised for malformed or non-canonicalizable group descriptions."""


class ContextError(ValueError):
    """Raised when an operation is applied to a group inadmissible in its context."""


@dataclass(frozen=True)
class FieldContext:
    """Characteristic data of the base field.

    ``char_K`` is 0 or the prime ``p``; ``p`` is the residue characteristic;
    ``m`` is the residue degree (groups in characteristic p are viewed inside
    PGL2(F_{p^m}); in characteristic 0 only ``p`` matters, for the <=5 cases).
    """

    char_K: int
    p: int
    m: int = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ContextError(f"residue characteristic {self.p} is not prime")
        if self.m < 1:
            raise ContextError(f"residue degree m={self.m} must be >= 1")
        if self.char_K not in (0, self.p):
            raise ContextError(
                f"char K must be 0 or p={self.p}, got {self.char_K}"
            )

    @property
    def positive_char(self) -> bool:
        return self.char_K != 0


@dataclass(frozen=True)
class GroupSymbol:
    """A canonical Dickson symbol. Build via the constructor helpers below."""

    kind: str
    n: int = 0
    t: int = 0
    variant: str = ""

    def __str__(self) -> str:
        if self.kind == KIND_TRIVIAL:
            return "1"
        if self.kind == KIND_CYCLIC:
            return f"C{self.n}"
        if self.kind == KIND_DIHEDRAL:
            return f"D{self.n}"
        if self.kind == KIND_BOREL:
            if self.n == 1:
                return f"E{self.t}"
            return f"B({self.t},{self.n})"
        if self.kind == KIND_PROJ_LINEAR:
            return f"{self.variant}2(p^{self.t})"
        return {KIND_TETRAHEDRAL: "A4", KIND_OCTAHEDRAL: "S4", KIND_ICOSAHEDRAL: "A5"}[self.kind]

    def sort_key(self) -> tuple:
        return (self.kind, self.n, self.t, self.variant)


TRIVIAL = GroupSymbol(KIND_TRIVIAL)
TETRAHEDRAL = GroupSymbol(KIND_TETRAHEDRAL)
OCTAHEDRAL = GroupSymbol(KIND_OCTAHEDRAL)
ICOSAHEDRAL = GroupSymbol(KIND_ICOSAHEDRAL)


def cyclic(n: int) -> GroupSymbol:
    if n < 1:
        raise SymbolError(f"cyclic order must be positive, got {n}")
    if n == 1:
        return TRIVIAL
    return GroupSymbol(KIND_CYCLIC, n=n)


def dihedral(n: int) -> GroupSymbol:
    if n < 2:
        raise SymbolError(f"dihedral parameter must be >= 2, got {n} (D1 is C2)")
    return GroupSymbol(KIND_DIHEDRAL, n=n)


def borel(t: int, n: int) -> GroupSymbol:
    if n < 1:
        raise SymbolError(f"Borel torus order must be positive, got B({t},{n})")
    if t < 0:
        raise SymbolError(f"Borel rank must be non-negative, got B({t},{n})")
    if t == 0:
        return cyclic(n)
    return GroupSymbol(KIND_BOREL, n=n, t=t)


def elementary(t: int) -> GroupSymbol:
    """E_t = B(t, 1), the elementary abelian p-group of rank t."""
    return borel(t, 1)


def proj_linear(variant: str, t: int) -> GroupSymbol:
    if variant not in ("PGL", "PSL"):
        raise SymbolError(f"projective linear variant must be PGL or PSL, got {variant!r}")
    if t < 1:
        raise SymbolError(f"projective linear field exponent must be >= 1, got {t}")
    return GroupSymbol(KIND_PROJ_LINEAR, t=t, variant=variant)


RawSymbol = Union[GroupSymbol, Mapping]


def canonicalize(raw: RawSymbol) -> GroupSymbol:
    """Return the canonical form of a symbol or of a mapping description.

    Mappings use the spelling of the input file format, e.g.
    ``{"kind": "borel", "t": 0, "n": 7}`` -> ``C7``. Idempotent.
    """
    if isinstance(raw, GroupSymbol):
        kind, n, t, variant = raw.kind, raw.n, raw.t, raw.variant
    elif isinstance(raw, Mapping):
        kind = raw.get("kind")
        n = int(raw.get("n", 0))
        t = int(raw.get("t", 0))
        variant = raw.get("variant", "")
    else:
        raise SymbolError(f"group description must be a symbol or a mapping, got {raw!r}")
    if kind not in _ALL_KINDS:
        raise SymbolError(f"unknown group kind {kind!r}")
    if kind == KIND_TRIVIAL:
        return TRIVIAL
    if kind == KIND_CYCLIC:
        return cyclic(n)
    if kind == KIND_DIHEDRAL:
        return dihedral(n)
    if kind == KIND_BOREL:
        return borel(t, n)
    if kind == KIND_PROJ_LINEAR:
        return proj_linear(variant, t)
    return GroupSymbol(kind)


def symbol_to_dict(g: GroupSymbol) -> dict:
    """Inverse of canonicalize for the JSON input format."""
    d: dict = {"kind": g.kind}
    if g.kind in (KIND_CYCLIC, KIND_DIHEDRAL):
        d["n"] = g.n
    elif g.kind == KIND_BOREL:
        d["t"] = g.t
        d["n"] = g.n
    elif g.kind == KIND_PROJ_LINEAR:
        d["variant"] = g.variant
        d["t"] = g.t
    return d


def is_borel_form(g: GroupSymbol) -> bool:
    """True for B(t,n) in the wide sense: trivial, cyclic (t=0) and Borel symbols."""
    return g.kind in (KIND_TRIVIAL, KIND_CYCLIC, KIND_BOREL)


def borel_params(g: GroupSymbol) -> tuple[int, int]:
    """(t, n) of a Borel-form symbol; raises for anything else."""
    if g.kind == KIND_TRIVIAL:
        return (0, 1)
    if g.kind == KIND_CYCLIC:
        return (0, g.n)
    if g.kind == KIND_BOREL:
        return (g.t, g.n)
    raise SymbolError(f"{g} is not of Borel form")


def is_cyclic(g: GroupSymbol) -> bool:
    """Structural cyclicity: the Cyclic(n) symbols, n >= 2 (Trivial counted nowhere)."""
    return g.kind == KIND_CYCLIC


@dataclass(frozen=True)
class PLInvariants:
    n_minus: int
    n_plus: int


def pl_invariants(g: GroupSymbol, ctx: FieldContext) -> PLInvariants:
    """n- and n+ of a projective linear symbol: p^t -+ 1, halved for PSL (p odd)."""
    if g.kind != KIND_PROJ_LINEAR:
        raise SymbolError(f"pl_invariants needs a projective linear symbol, got {g}")
    q = ctx.p ** g.t
    if g.variant == "PGL":
        return PLInvariants(q - 1, q + 1)
    if ctx.p == 2:
        raise ContextError("PSL2 coincides with PGL2 for p=2; use the PGL spelling")
    return PLInvariants((q - 1) // 2, (q + 1) // 2)


def order(g: GroupSymbol, ctx: FieldContext) -> int:
    """Group order. The symbol must be admissible in ctx (Trivial allowed)."""
    violations = validate_in_context(g, ctx)
    if violations:
        raise ContextError(f"{g} inadmissible in {ctx}: " + "; ".join(violations))
    if g.kind == KIND_TRIVIAL:
        return 1
    if g.kind == KIND_CYCLIC:
        return g.n
    if g.kind == KIND_DIHEDRAL:
        return 2 * g.n
    if g.kind == KIND_BOREL:
        return g.n * ctx.p ** g.t
    if g.kind == KIND_PROJ_LINEAR:
        q = ctx.p ** g.t
        full = q * (q - 1) * (q + 1)
        return full if g.variant == "PGL" else full // 2
    return {KIND_TETRAHEDRAL: 12, KIND_OCTAHEDRAL: 24, KIND_ICOSAHEDRAL: 60}[g.kind]


def validate_in_context(g: GroupSymbol, ctx: FieldContext) -> tuple[str, ...]:
    """Side conditions for each Dickson item; returns the violated ones (empty = ok).

    In characteristic p these are the catalog proposition's conditions; in
    characteristic 0 every Dickson type is admissible except the p-order
    families (Borel and projective linear symbols with t >= 1).
    """
    if g.kind == KIND_TRIVIAL:
        return ()
    bad: list[str] = []
    p, m = ctx.p, ctx.m
    if not ctx.positive_char:
        if g.kind in (KIND_BOREL, KIND_PROJ_LINEAR):
            bad.append(f"{g}: Borel/projective-linear symbols do not occur in char 0")
        return tuple(bad)
    if g.kind == KIND_CYCLIC:
        if math.gcd(g.n, p) != 1:
            bad.append(f"C{g.n}: order must be prime to p={p}")
    elif g.kind == KIND_DIHEDRAL:
        if p == 2:
            if g.n % 2 == 0:
                bad.append(f"D{g.n}: n must be odd for p=2")
        else:
            if (p ** m - 1) % g.n != 0 and (p ** m + 1) % g.n != 0:
                bad.append(f"D{g.n}: n must divide p^m-1 or p^m+1 (p^m={p ** m})")
    elif g.kind == KIND_BOREL:
        if g.t > m:
            bad.append(f"{g}: rank t={g.t} exceeds residue degree m={m}")
        if g.n > 1:
            if (p ** g.t - 1) % g.n != 0:
                bad.append(f"{g}: n must divide p^t-1={p ** g.t - 1}")
            if (p ** m - 1) % g.n != 0:
                bad.append(f"{g}: n must divide p^m-1={p ** m - 1}")
    elif g.kind == KIND_PROJ_LINEAR:
        # t | m (not just t <= m): the field F_{p^t} must embed into F_{p^m},
        # and the Borel cusp B(t, n-) of the tree must itself be admissible.
        if g.t > m or m % g.t != 0:
            bad.append(f"{g}: field exponent t={g.t} must divide residue degree m={m}")
        if g.variant == "PSL" and p == 2:
            bad.append("PSL2 coincides with PGL2 for p=2; use the PGL spelling")
    elif g.kind in (KIND_TETRAHEDRAL, KIND_OCTAHEDRAL):
        if p in (2, 3):
            bad.append(f"{g}: requires p not in {{2,3}}")
    elif g.kind == KIND_ICOSAHEDRAL:
        if p in (2, 5):
            bad.append(f"{g}: requires p not in {{2,5}}")
        elif (p ** (2 * m) - 1) % 5 != 0:
            bad.append(f"{g}: requires 5 | p^2m - 1 (p^2m={p ** (2 * m)})")
    return tuple(bad)


def is_admissible(g: GroupSymbol, ctx: FieldContext) -> bool:
    return not validate_in_context(g, ctx)


def borel_extends(small: GroupSymbol, large: GroupSymbol) -> bool:
    """Whether small = B(t,n) sits inside large = B(t',n) with t | t'.

    Cyclic symbols count as t = 0 and extend into any Borel with the same
    torus order. False (never an error) for non-Borel-form input. Reflexive.
    """
    if not (is_borel_form(small) and is_borel_form(large)):
        return False
    t, n = borel_params(small)
    t2, n2 = borel_params(large)
    if n != n2:
        return False
    if t == 0:
        return True
    return t <= t2 and t2 % t == 0


def symbol_contains(large: GroupSymbol, small: GroupSymbol, ctx: FieldContext) -> bool:
    """Symbolic subgroup test for the containment patterns the engine needs.

    Deliberately partial: only relations justified by the classification are
    recognized (nested Borels, cyclic and dihedral subgroups, the polyhedral
    chain, torus/Borel subgroups of the projective linear groups). Unknown
    pairs return False.
    """
    if small.kind == KIND_TRIVIAL or large == small:
        return True
    if large.kind == KIND_TRIVIAL:
        return False
    if is_borel_form(small) and is_borel_form(large):
        if borel_extends(small, large):
            return True
        # C_k inside B(t,n) via the torus part.
        if small.kind == KIND_CYCLIC and large.kind in (KIND_CYCLIC, KIND_BOREL):
            return large.n % small.n == 0
        # E_s inside the unipotent part of B(t,n) (aligned embedding).
        ts, ns = borel_params(small)
        tl, _ = borel_params(large)
        return ns == 1 and large.kind == KIND_BOREL and ts <= tl
    if large.kind == KIND_DIHEDRAL:
        if small.kind == KIND_CYCLIC:
            return small.n == 2 or large.n % small.n == 0
        if small.kind == KIND_DIHEDRAL:
            return large.n % small.n == 0
        if small.kind == KIND_BOREL:
            # E_1 at p=2 is the parabolic involution of D_n.
            return (small.t, small.n) == (1, 1) and ctx.p == 2
        return False
    if large.kind in _POLYHEDRAL:
        cyc = {KIND_TETRAHEDRAL: (2, 3), KIND_OCTAHEDRAL: (2, 3, 4), KIND_ICOSAHEDRAL: (2, 3, 5)}
        dih = {KIND_TETRAHEDRAL: (2,), KIND_OCTAHEDRAL: (2, 3, 4), KIND_ICOSAHEDRAL: (2, 3, 5)}
        if small.kind == KIND_CYCLIC:
            return small.n in cyc[large.kind]
        if small.kind == KIND_DIHEDRAL:
            return small.n in dih[large.kind]
        if small.kind == KIND_TETRAHEDRAL:
            return large.kind in (KIND_OCTAHEDRAL, KIND_ICOSAHEDRAL)
        if small.kind == KIND_BOREL and large.kind == KIND_ICOSAHEDRAL:
            # B(1,2) = S3 = D3 sits in A5 (only sensible at p=3).
            return (small.t, small.n) == (1, 2)
        return False
    if large.kind == KIND_PROJ_LINEAR:
        inv = pl_invariants(large, ctx)
        if small.kind == KIND_CYCLIC:
            return inv.n_plus % small.n == 0 or inv.n_minus % small.n == 0 or small.n == ctx.p
        if is_borel_form(small):
            ts, ns = borel_params(small)
            return ts <= large.t and large.t % max(ts, 1) == 0 and (ns == 1 or inv.n_minus % ns == 0)
        if small.kind == KIND_DIHEDRAL:
            return inv.n_plus % small.n == 0 or inv.n_minus % small.n == 0
        if small.kind == KIND_PROJ_LINEAR:
            return (
                small.t <= large.t
                and large.t % small.t == 0
                and (small.variant == large.variant or large.variant == "PGL")
            )
        return False
    return False


class DeriveError(ValueError):
    """Raised when an edge group cannot be derived from a supported pattern."""


def derive_edge_group(gu: GroupSymbol, gv: GroupSymbol, ctx: FieldContext) -> GroupSymbol:
    """Intersection of two vertex groups for the supported edge patterns.

    Supported: projective linear meets Borel (B(t,n) with t | s and n the
    PL invariant n-), two comparable Borel-form symbols with the same torus
    (the smaller one), and two cyclics (the gcd, possibly Trivial). Anything
    else raises DeriveError and must be given explicitly in the input.
    """
    if gu.kind == KIND_PROJ_LINEAR or gv.kind == KIND_PROJ_LINEAR:
        pl, other = (gu, gv) if gu.kind == KIND_PROJ_LINEAR else (gv, gu)
        if other.kind == KIND_BOREL:
            n_minus = pl_invariants(pl, ctx).n_minus
            t, s = pl.t, other.t
            if other.n == n_minus and s >= t and s % t == 0:
                return borel(t, n_minus)
        raise DeriveError(
            f"cannot derive edge group for ({gu}, {gv}); specify edge group in input"
        )
    if gu.kind in (KIND_CYCLIC, KIND_TRIVIAL) and gv.kind in (KIND_CYCLIC, KIND_TRIVIAL):
        return cyclic(math.gcd(max(gu.n, 1), max(gv.n, 1)))
    if is_borel_form(gu) and is_borel_form(gv):
        tu, nu = borel_params(gu)
        tv, nv = borel_params(gv)
        if nu == nv:
            lo, hi = sorted((tu, tv))
            if lo == 0 or hi % lo == 0:
                return borel(lo, nu)
    raise DeriveError(
        f"cannot derive edge group for ({gu}, {gv}); specify edge group in input"
    )


def format_symbol(g: GroupSymbol, ctx: FieldContext | None = None) -> str:
    """Pretty form; with a context the projective linear field size is concrete."""
    if g.kind == KIND_PROJ_LINEAR and ctx is not None:
        return f"{g.variant}2({ctx.p ** g.t})"
    return str(g)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def lcm_orders(groups: Iterable[GroupSymbol], ctx: FieldContext) -> int:
    out = 1
    for g in groups:
        out = math.lcm(out, order(g, ctx))
    return out
