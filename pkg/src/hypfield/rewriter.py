"""Derivation pipeline: parameters and two-index functions in the generators.

The pipeline runs in a fixed order — curve parameters from the generating
series, then the (3, l) entries from the first relation family, then the
(k, l) entries with k >= 5 from the second family with the first index
ascending — so that every extraction only references symbols that are
already known.  The result is a RelationTable mapping every la_s and every
w_k_l to a homogeneous polynomial in the 3g generators, plus a reducer that
rewrites arbitrary expressions into the fraction field of those generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .exactmath import format_rational
from .polyring import Poly, Symbol, homogeneous_weight, la, w, b1, b2, b3
from .relations import GenusContext, RelationId, bel1, bel2, l1_rhs, pp_symbol


class InternalInconsistency(RuntimeError):
    """A forced cancellation in the derivation pipeline failed."""


class UnresolvedSymbol(RuntimeError):
    """An extraction referenced a symbol that is not yet derived."""


class UnsupportedSymbol(ValueError):
    """Expression uses a multi-index function outside the supported closure."""


class DivisionByZeroPoly(ZeroDivisionError):
    """A denominator reduced to the zero polynomial."""


# ---------------------------------------------------------------------------
# expression AST (surface symbols; built by the exprlang parser)

@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class PSym:
    indices: tuple  # at least two odd indices


@dataclass(frozen=True)
class Lam:
    s: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Const, PSym, Lam, Neg, BinOp, Pow]


# ---------------------------------------------------------------------------
# relation table

@dataclass(frozen=True)
class RelationTable:
    genus: int
    lam: Mapping[int, Poly]
    w: Mapping[tuple, Poly]
    provenance: Mapping[str, str]

    def substitution_env(self) -> dict:
        """Symbol -> pure-generator polynomial, for la and w symbols."""
        env = {la(s): p for s, p in self.lam.items()}
        env.update({w(k, l): p for (k, l), p in self.w.items()})
        return env

    def text(self) -> str:
        lines = [f"genus {self.genus}", "lambda"]
        for s in sorted(self.lam):
            lines.append(f"la_{s} = {self.lam[s]}")
        lines.append("w")
        for k, l in sorted(self.w):
            lines.append(f"w_{k}_{l} = {self.w[(k, l)]}")
        return "\n".join(lines) + "\n"

    def tree(self) -> dict:
        return {
            "genus": self.genus,
            "lambda": {str(s): str(self.lam[s]) for s in sorted(self.lam)},
            "w": {f"{k},{l}": str(self.w[(k, l)]) for k, l in sorted(self.w)},
            "provenance": {k: self.provenance[k] for k in sorted(self.provenance)},
        }

    def tree_text(self) -> str:
        return json.dumps(self.tree(), indent=2) + "\n"


def _require_pure_generators(p: Poly, what: str):
    bad = [s for s in p.symbols() if s.kind not in ("b1", "b2", "b3")]
    if bad:
        raise UnresolvedSymbol(f"{what} still contains {sorted(s.name for s in bad)}")


def derive_lambda(ctx: GenusContext) -> dict:
    """Curve parameters from the xi-coefficients of the generating series."""
    rhs = l1_rhs(ctx)
    if rhs[-1] != Poly.const(4):
        raise InternalInconsistency("xi^-1 coefficient of the series is not 4")
    if not rhs[0].is_zero():
        raise InternalInconsistency("xi^0 coefficient of the series is not 0")
    out = {}
    for i in range(1, 2 * ctx.g + 1):
        s = 2 * i + 2
        entry = Fraction(1, 4) * rhs[i]
        _require_pure_generators(entry, f"la_{s}")
        out[s] = entry
    return out


def derive_w3(ctx: GenusContext, lambda_table: dict) -> dict:
    """Entries (3, l) by rearranging the first relation family at i = l."""
    out = {}
    la_env = {la(s): p for s, p in lambda_table.items()}
    for l in ctx.odd_indices:
        if l < 3:
            continue
        entry = (
            3 * Poly.symbol(b1(1)) * pp_symbol(ctx, 1, l)
            + 3 * pp_symbol(ctx, 1, l + 2)
            - Fraction(1, 2) * Poly.symbol(b3(l))
        )
        # the la_4 delta term would need l == 1, which never happens here
        entry = entry.substitute(la_env)
        _require_pure_generators(entry, f"w_3_{l}")
        out[(3, l)] = entry
    return out


def extract_from_bel2(
    ctx: GenusContext, env: dict, i: int, j: int, target: tuple
) -> Poly:
    """Solve the (i, j) instance of the quadratic family for one w symbol.

    ``env`` must already map every other non-generator symbol of the
    instance to a pure-generator polynomial.  Raises UnresolvedSymbol when
    it does not, which signals an invalid extraction path.
    """
    k, l = min(target), max(target)
    target_sym = w(k, l)
    residual = bel2(ctx, i, j)
    lin = residual.coeff(((target_sym, 1),))
    if not lin:
        raise UnresolvedSymbol(f"{target_sym.name} does not occur linearly in BEL2[{i},{j}]")
    rest = residual - lin * Poly.symbol(target_sym)
    if target_sym in rest.symbols():
        raise UnresolvedSymbol(f"{target_sym.name} occurs nonlinearly in BEL2[{i},{j}]")
    solved = (-1 / lin) * rest.substitute(env)
    _require_pure_generators(solved, target_sym.name)
    return solved


def derive_w_high(ctx: GenusContext, lambda_table: dict, w3_table: dict) -> dict:
    """Entries (k, l) with k >= 5, first index ascending.

    The (k-4, l) instance of the quadratic family is linear in the target;
    everything else it mentions has a smaller first index or is cut to zero.
    """
    out = {}
    env = {la(s): p for s, p in lambda_table.items()}
    env.update({w(k, l): p for (k, l), p in w3_table.items()})
    for k in ctx.odd_indices:
        if k < 5:
            continue
        for l in ctx.odd_indices:
            if l < k:
                continue
            entry = extract_from_bel2(ctx, env, k - 4, l, (k, l))
            out[(k, l)] = entry
            env[w(k, l)] = entry
    return out


def build_table(ctx: GenusContext) -> RelationTable:
    """Full pipeline plus validation of coverage, purity and homogeneity."""
    lam_table = derive_lambda(ctx)
    w3_table = derive_w3(ctx, lam_table)
    wh_table = derive_w_high(ctx, lam_table, w3_table)
    w_table = dict(w3_table)
    w_table.update(wh_table)

    if set(lam_table) != set(ctx.lambda_indices):
        raise InternalInconsistency("lambda coverage mismatch")
    if set(w_table) != set(ctx.w_pairs):
        raise InternalInconsistency("w coverage mismatch")
    for s, p in lam_table.items():
        if homogeneous_weight(p) != s:
            raise InternalInconsistency(f"la_{s} has wrong weight")
    for (k, l), p in w_table.items():
        if homogeneous_weight(p) != k + l:
            raise InternalInconsistency(f"w_{k}_{l} has wrong weight")

    provenance = {f"la_{2 * i + 2}": f"L1[xi^{i}]" for i in range(1, 2 * ctx.g + 1)}
    for k, l in w_table:
        if k == 3:
            provenance[f"w_{k}_{l}"] = str(RelationId("BEL1", (l,)))
        else:
            provenance[f"w_{k}_{l}"] = str(RelationId("BEL2", (k - 4, l)))
    return RelationTable(ctx.g, lam_table, w_table, provenance)


# ---------------------------------------------------------------------------
# reduction of expressions into the fraction field of the generators

def _resolve_psym(ctx: GenusContext, table: RelationTable, indices: tuple) -> Poly:
    idx = tuple(sorted(indices))
    n = len(idx)
    if n == 2:
        return pp_symbol(ctx, idx[0], idx[1])
    if n == 3 and idx[0] == idx[1] == 1:
        k = idx[2]
        if k <= 2 * ctx.g - 1:
            return Poly.symbol(b2(k))
    elif n == 4 and idx[0] == idx[1] == idx[2] == 1:
        k = idx[3]
        if k <= 2 * ctx.g - 1:
            return Poly.symbol(b3(k))
    raise UnsupportedSymbol(
        f"p[{','.join(str(i) for i in indices)}] is outside the supported closure "
        "(only two-index symbols and the 1-, 1,1-, 1,1,1-prefixed generators)"
    )


def _strip_common_monomial(num: Poly, den: Poly):
    monos = list(num.terms) + list(den.terms)
    if not monos:
        return num, den
    common = dict(monos[0])
    for mono in monos[1:]:
        exps = dict(mono)
        for sym in list(common):
            e = min(common[sym], exps.get(sym, 0))
            if e:
                common[sym] = e
            else:
                del common[sym]
        if not common:
            break
    if not common:
        return num, den

    def divide(p: Poly) -> Poly:
        out = {}
        for mono, c in p.terms.items():
            exps = dict(mono)
            for sym, e in common.items():
                exps[sym] -= e
                if not exps[sym]:
                    del exps[sym]
            out[tuple(sorted(exps.items(), key=lambda it: it[0].key))] = c
        return Poly(out)

    return divide(num), divide(den)


def normalize_fraction(num: Poly, den: Poly):
    """Canonical form: no common monomial factor, monic denominator."""
    if den.is_zero():
        raise DivisionByZeroPoly("denominator reduced to the zero polynomial")
    if num.is_zero():
        return Poly.zero(), Poly.one()
    num, den = _strip_common_monomial(num, den)
    lead = den.leading_coeff()
    if lead != 1:
        inv = 1 / lead
        num = num * inv
        den = den * inv
    return num, den


def reduce_expr(ctx: GenusContext, table: RelationTable, e: Expr):
    """Rewrite an expression to a normalized (numerator, denominator) pair
    of pure-generator polynomials."""
    env = table.substitution_env()

    def go(node) -> tuple:
        if isinstance(node, Const):
            return Poly.const(node.value), Poly.one()
        if isinstance(node, Lam):
            if node.s not in table.lam:
                raise UnsupportedSymbol(f"la{node.s} outside 4..{4 * ctx.g + 2}")
            return table.lam[node.s], Poly.one()
        if isinstance(node, PSym):
            p = _resolve_psym(ctx, table, node.indices).substitute(env)
            return p, Poly.one()
        if isinstance(node, Neg):
            n, d = go(node.arg)
            return -n, d
        if isinstance(node, Pow):
            n, d = go(node.base)
            k = node.exponent
            if k < 0:
                n, d = d, n
                k = -k
                if n.is_zero() or d.is_zero():
                    raise DivisionByZeroPoly("negative power of zero")
            return n ** k, d ** k
        if isinstance(node, BinOp):
            n1, d1 = go(node.left)
            n2, d2 = go(node.right)
            if node.op == "+":
                return n1 * d2 + n2 * d1, d1 * d2
            if node.op == "-":
                return n1 * d2 - n2 * d1, d1 * d2
            if node.op == "*":
                return n1 * n2, d1 * d2
            if node.op == "/":
                return n1 * d2, d1 * n2
            raise ValueError(f"unknown operator {node.op!r}")
        raise TypeError(f"not an expression node: {node!r}")

    num, den = go(e)
    return normalize_fraction(num, den)


def format_fraction(num: Poly, den: Poly) -> str:
    if den == Poly.one():
        return str(num)
    return f"({num}) / ({den})"
