"""Bookkeeping of Lambda-invariants attached to declared local and global
data: corank accounting for the target of the global-to-local map and the
lambda-invariant comparison for two congruent forms.

Nothing here computes Galois cohomology; every local module is described by
the invariants the caller declares.
"""

from dataclasses import dataclass, field
from enum import Enum

from .errors import DegreeMismatch, HypothesisViolated, IwasawaError, UnknownPrime


class PrimeKind(str, Enum):
    ABOVE_P = "above_p"
    FINITELY_DECOMPOSED = "finitely_decomposed"
    SPLIT = "split"


@dataclass(frozen=True)
class FieldDatum:
    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0 or self.r1 + self.r2 == 0:
            raise IwasawaError(f"invalid signature (r1={self.r1}, r2={self.r2})")

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2


@dataclass(frozen=True)
class PrimeDatum:
    """A prime of F with its decomposition type in F_infinity.

    ``above_p`` primes carry ``local_degree`` = [F_v : Q_p] and never split
    completely; ``finitely_decomposed`` primes carry ``lambda_v``; ``split``
    primes carry the O-rank ``h0_rank`` of H^0(F_v, A*) and the exponents
    ``torsion`` of its torsion part.
    """

    id: str
    kind: PrimeKind
    local_degree: int = 0
    lambda_v: int = 0
    h0_rank: int = 0
    torsion: tuple = ()
    divides_tame_level: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", PrimeKind(self.kind))
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.kind is PrimeKind.ABOVE_P and self.local_degree < 1:
            raise IwasawaError(f"prime {self.id}: local_degree must be >= 1")
        if self.lambda_v < 0 or self.h0_rank < 0 or any(m < 1 for m in self.torsion):
            raise IwasawaError(f"prime {self.id}: invariants must be nonnegative (torsion exponents >= 1)")

    @property
    def h_vanishes(self) -> bool:
        return self.h0_rank == 0 and not self.torsion


@dataclass(frozen=True)
class SplitData:
    h0_rank: int = 0
    torsion: tuple = ()

    @property
    def vanishes(self):
        return self.h0_rank == 0 and not self.torsion


@dataclass(frozen=True)
class FormDatum:
    """Declared invariants of one form: lambda(f), mu(f), the local lambda_v
    at finitely decomposed level primes, and H_v data at split level primes."""

    label: str
    lambda_f: int
    mu_f: int = 0
    local_lambdas: dict = field(default_factory=dict)
    split: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lambda_f < 0 or self.mu_f < 0 or any(v < 0 for v in self.local_lambdas.values()):
            raise IwasawaError(f"form {self.label}: invariants must be nonnegative")
        split = {k: v if isinstance(v, SplitData) else SplitData(v.get("h0_rank", 0), tuple(v.get("torsion", ())))
                 for k, v in self.split.items()}
        object.__setattr__(self, "split", split)
        both = set(self.local_lambdas) & set(split)
        if both:
            raise IwasawaError(f"form {self.label}: prime(s) {sorted(both)} declared both split and finitely decomposed")


UNSPECIFIED = None


def local_invariants(v: PrimeDatum):
    """(Lambda-corank, mu, lambda) of the local module H_v.

    Above p the lambda-invariant is not determined by the declared data and
    comes back as ``None``.
    """
    if v.kind is PrimeKind.ABOVE_P:
        return (v.local_degree, 0, UNSPECIFIED)
    if v.kind is PrimeKind.FINITELY_DECOMPOSED:
        return (0, 0, v.lambda_v)
    return (v.h0_rank, sum(v.torsion), 0)


def check_degree_partition(field_: FieldDatum, primes):
    total = sum(v.local_degree for v in primes if v.kind is PrimeKind.ABOVE_P)
    if total != field_.degree:
        raise DegreeMismatch(
            f"local degrees above p sum to {total}, but [F:Q] = {field_.degree}")


def target_corank(field_: FieldDatum, primes):
    """Lambda-corank of the product of local modules over Sigma."""
    primes = list(primes)
    check_degree_partition(field_, primes)
    corank = sum(local_invariants(v)[0] for v in primes)
    violating = [v.id for v in primes if v.kind is PrimeKind.SPLIT and v.h0_rank > 0]
    return {"corank": corank, "degree": field_.degree,
            "equals_degree": not violating, "violating_primes": violating}


def h1_corank_floor(field_: FieldDatum) -> int:
    return field_.r1 + 2 * field_.r2


def _check_form(f: FormDatum, sigma0):
    if f.mu_f > 0:
        raise HypothesisViolated(f"form {f.label}: mu = {f.mu_f} > 0")
    for v in sigma0:
        if v in f.split:
            if not f.split[v].vanishes:
                raise HypothesisViolated(f"form {f.label}: H_v != 0 at split prime {v}")
        elif v not in f.local_lambdas:
            raise UnknownPrime(f"form {f.label}: no data for prime {v} in Sigma_0")


def local_lambda_sum(f: FormDatum, sigma0) -> int:
    return sum(f.local_lambdas[v] for v in sigma0 if v in f.local_lambdas)


def nonprimitive_lambda(f: FormDatum, sigma0) -> int:
    """lambda(Sigma_0, f) = lambda(f) + sum of lambda_v over finitely decomposed v in Sigma_0."""
    sigma0 = list(sigma0)
    _check_form(f, sigma0)
    return f.lambda_f + local_lambda_sum(f, sigma0)


def lambda_difference(f1: FormDatum, f2: FormDatum, sigma0):
    """sum_v (lambda_{v,2} - lambda_{v,1}) and whether it agrees with the
    declared lambda(f1) - lambda(f2)."""
    sigma0 = list(sigma0)
    l1 = nonprimitive_lambda(f1, sigma0)
    l2 = nonprimitive_lambda(f2, sigma0)
    diff = local_lambda_sum(f2, sigma0) - local_lambda_sum(f1, sigma0)
    consistent = l1 == l2 and diff == f1.lambda_f - f2.lambda_f
    return {"difference": diff, "declared_difference": f1.lambda_f - f2.lambda_f,
            "nonprimitive_lambda": [l1, l2], "consistent": consistent}


@dataclass(frozen=True)
class Ledger:
    field: FieldDatum
    primes: tuple = ()
    forms: tuple = ()
    sigma0: tuple = ()

    def validate(self):
        check_degree_partition(self.field, self.primes)
        ids = [v.id for v in self.primes]
        if len(set(ids)) != len(ids):
            raise IwasawaError("duplicate prime ids")
        return self

    def evaluate(self):
        self.validate()
        report = {
            "h1_corank_floor": h1_corank_floor(self.field),
            "target_corank": target_corank(self.field, self.primes),
            "local_invariants": {v.id: list(local_invariants(v)) for v in self.primes},
            "nonprimitive_lambda": {f.label: nonprimitive_lambda(f, self.sigma0) for f in self.forms},
        }
        if len(self.forms) == 2:
            report["lambda_difference"] = lambda_difference(self.forms[0], self.forms[1], self.sigma0)
        return report
