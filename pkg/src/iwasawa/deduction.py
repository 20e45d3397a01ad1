"""Derive Iwasawa invariants (mu, lambda, nu) from class-group growth.

With e_n the exponent of p in the class number of the n-th layer, the
order identity for a totally ramified Z_p-extension gives

    R_n := e_n - e_0 - mu (p^n - 1)  =  log_p #(F_1/nu_n F_1) + log_p #(E_2/nu_n E_2)

where F_1 is finite and E_2 is the non-mu part of the elementary module.
The engine enumerates the admissible mu, then uses structural facts about
R_n to pin down lambda and nu.  Each step is recorded as a trace entry
naming the fact it relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .ambiguous import mu_lower_from_s
from .class_data import ExampleRecord, Flags, p_exponent
from .elementary import bound_is_quoted, lambdathm_lower_bound
from .errors import DomainError, InconsistentInput, ValidationError
from .padic import check_prime

CITE = {
    "R1": "Iwasawa construction via Chevalley's ambiguous class count: mu >= s - 1",
    "R2": "order identity #A_n = #A_0 #(F_1/nu_n F_1) #(E/nu_n E): mu <= (e_n - e_0)/(p^n - 1)",
    "R3": "lambda is even when only one prime ramifies in the Z_p-extension",
    "R4": "lambda is divisible by p - 1 when p does not divide the class number of k_0",
    "R5": "quotient monotonicity: #(M/nu_n M) <= #(M/nu_{n+1} M)",
    "R6": "M/nu_1 M = 0 if and only if M = 0",
    "R7": "lower bounds on #(E/nu_1 E) and, for p = 2, #(E/nu_2 E) when mu(E) = 0",
    "R8": "equal finite quotients at levels n, n+1 force nu_n M = 0",
    "R9": "#(F_1/nu_n F_1) is nondecreasing in n",
}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    citation: str
    consequence: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "citation": self.citation, "consequence": self.consequence}


@dataclass(frozen=True)
class MuRange:
    lo: int
    hi: int | None

    @property
    def exact(self) -> int | None:
        return self.lo if self.lo == self.hi else None

    def contains(self, v: int) -> bool:
        return v >= self.lo and (self.hi is None or v <= self.hi)

    def __str__(self) -> str:
        if self.exact is not None:
            return f"μ={self.exact}"
        if self.hi is None:
            return f"μ≥{self.lo}"
        return f"{self.lo}≤μ≤{self.hi}"

    def to_json(self):
        if self.exact is not None:
            return self.exact
        out = {"min": self.lo}
        if self.hi is not None:
            out["max"] = self.hi
        return out


@dataclass(frozen=True)
class LambdaConstraint:
    """Either an exact lambda or the set {L >= 0 : modulus | L, L <= upper, L not excluded}."""

    exact: int | None = None
    modulus: int = 1
    upper: int | None = None
    excluded: tuple[int, ...] = ()

    def contains(self, v: int) -> bool:
        if self.exact is not None:
            return v == self.exact
        return (
            v >= 0
            and v % self.modulus == 0
            and (self.upper is None or v <= self.upper)
            and v not in self.excluded
        )

    def __str__(self) -> str:
        if self.exact is not None:
            return f"λ={self.exact}"
        parts = []
        if self.modulus > 1:
            parts.append(f"{self.modulus}|λ")
        if self.upper is not None:
            parts.append(f"λ≤{self.upper}")
        if self.excluded:
            parts.append("λ∉{" + ",".join(map(str, self.excluded)) + "}")
        return " ".join(parts) if parts else "λ=?"

    def to_json(self):
        if self.exact is not None:
            return self.exact
        out = {"divisible_by": self.modulus}
        if self.upper is not None:
            out["max"] = self.upper
        if self.excluded:
            out["excluded"] = list(self.excluded)
        return out


@dataclass(frozen=True)
class NuResult:
    exact: int | None = None
    min: int | None = None

    def contains(self, v: int) -> bool:
        if self.exact is not None:
            return v == self.exact
        return self.min is None or v >= self.min

    def __str__(self) -> str:
        if self.exact is not None:
            return f"ν={self.exact}"
        if self.min is not None:
            return f"ν≥{self.min}"
        return "ν=?"

    def to_json(self):
        if self.exact is not None:
            return self.exact
        if self.min is not None:
            return {"min": self.min}
        return "unknown"


@dataclass(frozen=True)
class DeductionResult:
    label: str
    p: int
    s: int
    e: tuple[int, ...]
    mu: MuRange
    lambda_: LambdaConstraint
    nu: NuResult
    residuals: dict[int, tuple[int, ...]]
    trace: tuple[TraceStep, ...]
    mu_candidates: tuple[int, ...] = ()
    # first level from which e_n = mu p^n + lambda n + nu is claimed
    asymptotic_from: int | None = None
    conditional_on: str | None = None

    @property
    def exact(self) -> bool:
        return (
            self.mu.exact is not None
            and self.lambda_.exact is not None
            and self.nu.exact is not None
        )

    def summary(self) -> str:
        return f"{self.mu} {self.lambda_} {self.nu}"

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "p": self.p,
            "s": self.s,
            "e": list(self.e),
            "mu": self.mu.to_json(),
            "lambda": self.lambda_.to_json(),
            "nu": self.nu.to_json(),
            "mu_candidates": list(self.mu_candidates),
            "residuals": {str(m): list(r) for m, r in sorted(self.residuals.items())},
            "trace": [t.to_json() for t in self.trace],
            "asymptotic_from": self.asymptotic_from,
        }
        if self.conditional_on is not None:
            out["conditional_on"] = self.conditional_on
        return out


def _check_sequence(e: Sequence[int]) -> None:
    for n in range(1, len(e)):
        if e[n] < e[n - 1]:
            raise ValidationError(
                f"e_{n} = {e[n]} < e_{n - 1} = {e[n - 1]}: class numbers must grow "
                "along a totally ramified tower"
            )


def mu_upper(e: Sequence[int], p: int) -> int:
    """min over n >= 1 of floor((e_n - e_0) / (p^n - 1))."""
    check_prime(p)
    if len(e) < 2:
        raise DomainError("need at least two layers for an upper bound on mu")
    _check_sequence(e)
    return min((e[n] - e[0]) // (p**n - 1) for n in range(1, len(e)))


def residuals(e: Sequence[int], p: int, mu: int) -> list[int]:
    return [e[n] - e[0] - mu * (p**n - 1) for n in range(len(e))]


def predict_e(mu: int, lam: int, nu: int, p: int, n: int) -> int:
    return mu * p**n + lam * n + nu


def _violation(r: Sequence[int]) -> str | None:
    for n in range(1, len(r)):
        if r[n] < r[n - 1]:
            return f"R_{n} = {r[n]} < R_{n - 1} = {r[n - 1]}"
    return None


def _regrowth(r: Sequence[int]) -> int | None:
    """First n with R_n = R_{n+1} after which the residuals still grow.

    Equal finite quotients at n and n+1 kill nu_n M, so they must stay equal.
    """
    for n in range(len(r) - 1):
        if r[n] == r[n + 1] and any(x != r[n] for x in r[n + 2 :]):
            return n
    return None


def _lambda_bounds(p: int, modulus: int, r: Sequence[int]) -> tuple[LambdaConstraint, list[str]]:
    """Drop lambda values whose forced quotient growth exceeds the residuals."""
    levels = [1] if p != 2 else [1, 2]
    levels = [n for n in levels if n < len(r)]
    # bounds are constant for L >= top, so one representative decides the tail
    top = max(p - 1, 3)
    tail = -(-top // modulus) * modulus
    notes = []
    rejected = []

    def rejects(L: int) -> str | None:
        for n in levels:
            b = lambdathm_lower_bound(p, L, n)
            if b > r[n]:
                flag = "" if bound_is_quoted(p, L, n) else " (derived floor, not quoted)"
                return f"λ={L} forces R_{n} ≥ {b} > {r[n]}{flag}"
        return None

    for L in range(modulus, tail + 1, modulus):
        why = rejects(L)
        if why:
            rejected.append(L)
            notes.append(why)
    tail_rejected = tail in rejected
    if tail_rejected:
        notes[-1] = notes[-1].replace(f"λ={tail} ", f"every λ≥{tail} ")
        allowed = [L for L in range(0, tail, modulus) if L not in rejected]
        upper = max(allowed)
        excluded = tuple(L for L in rejected if L < upper)
        if upper == 0:
            return LambdaConstraint(exact=0), notes
        return LambdaConstraint(modulus=modulus, upper=upper, excluded=excluded), notes
    return LambdaConstraint(modulus=modulus, excluded=tuple(rejected)), notes


def deduce_sequence(
    p: int,
    s: int,
    flags: Flags,
    e: Sequence[int],
    label: str = "",
    mu_caps: Sequence[tuple[int, int]] = (),
    conditional_on: str | None = None,
) -> DeductionResult:
    """Run rules R1-R9 on an exponent sequence e_0, e_1, ...

    ``mu_caps`` are extra (n, e_max) pairs known only as upper bounds on
    e_n; each contributes mu <= (e_max - e_0) / (p^n - 1).
    """
    check_prime(p)
    e = tuple(e)
    trace: list[TraceStep] = []

    def step(rule: str, text: str) -> None:
        trace.append(TraceStep(rule, CITE[rule], text))

    lo = mu_lower_from_s(s)
    step("R1", f"s={s} gives μ ≥ {lo}")

    hi = None
    if len(e) >= 2:
        hi = mu_upper(e, p)
        step("R2", f"e={list(e)} gives μ ≤ {hi}")
    for n, e_max in mu_caps:
        cap = (e_max - e[0]) // (p**n - 1)
        if hi is None or cap < hi:
            hi = cap
        step("R2", f"e_{n} ≤ {e_max} gives μ ≤ {cap}")
    if hi is not None and hi < lo:
        raise InconsistentInput(f"{label}: μ ≥ {lo} contradicts μ ≤ {hi}")

    modulus = 1
    if flags.single_ramified_prime:
        modulus = lcm(modulus, 2)
        step("R3", "one ramified prime: λ is even")
    if flags.p_nmid_class_number_k0 and p > 2:
        modulus = lcm(modulus, p - 1)
        step("R4", f"p ∤ h(k_0): {p - 1} divides λ")
    flag_lambda = LambdaConstraint(modulus=modulus)

    def result(mu, lam, nu, cands, res, asym=None) -> DeductionResult:
        return DeductionResult(
            label=label,
            p=p,
            s=s,
            e=e,
            mu=mu,
            lambda_=lam,
            nu=nu,
            residuals=res,
            trace=tuple(trace),
            mu_candidates=tuple(cands),
            asymptotic_from=asym,
            conditional_on=conditional_on,
        )

    if hi is None:
        return result(MuRange(lo, None), flag_lambda, NuResult(), (), {})

    res = {m: tuple(residuals(e, p, m)) for m in range(lo, hi + 1)}
    survivors = []
    for m, r in res.items():
        why = _violation(r)
        if why:
            step("R5", f"μ={m} eliminated: residuals {list(r)} have {why}")
            continue
        n = _regrowth(r)
        if n == 0:
            step("R6", f"μ={m} eliminated: R_1 = 0 but residuals {list(r)} later grow")
            continue
        if n is not None and flags.totally_ramified:
            step("R8", f"μ={m} eliminated: R_{n} = R_{n + 1} but residuals {list(r)} later grow")
            continue
        survivors.append(m)
    if not survivors:
        raise InconsistentInput(f"{label}: no μ in [{lo}, {hi}] has admissible residuals")
    if len(survivors) > 1:
        step("R5", f"μ ∈ {survivors} all have nondecreasing residuals")
        return result(
            MuRange(min(survivors), max(survivors)), flag_lambda, NuResult(), survivors, res
        )

    mu = survivors[0]
    r = res[mu]
    step("R5", f"μ={mu} is the only candidate; residuals {list(r)}")

    if len(r) >= 2 and r[1] == 0:
        nu = e[0] - mu
        step("R6", f"R_1 = 0 so F_1 = E_2 = 0: λ = 0, ν = e_0 - μ = {nu}; exact from n = 0")
        return result(MuRange(mu, mu), LambdaConstraint(exact=0), NuResult(exact=nu), [mu], res, 0)

    lam, notes = _lambda_bounds(p, modulus, r)
    for note in notes:
        step("R7", note)
    if notes:
        step("R7", f"surviving λ: {lam}")

    if flags.totally_ramified:
        for n in range(1, len(r) - 1):
            if r[n] == r[n + 1]:
                nu = e[0] - mu + r[n]
                step(
                    "R8",
                    f"R_{n} = R_{n + 1} = {r[n]}: λ = 0, ν = e_0 - μ + R_{n} = {nu}; "
                    f"asymptotic-only before n = {n}",
                )
                return result(
                    MuRange(mu, mu), LambdaConstraint(exact=0), NuResult(exact=nu), [mu], res, n
                )
    else:
        step("R8", "skipped: stabilization needs a totally ramified tower")

    if lam.exact == 0 and len(r) >= 2 and r[1] > 0:
        floor = e[0] - mu + r[-1]
        step("R9", f"λ = 0 and R_{len(r) - 1} = {r[-1]} > 0 from F_1: ν ≥ {floor}")
        return result(MuRange(mu, mu), lam, NuResult(min=floor), [mu], res)
    return result(MuRange(mu, mu), lam, NuResult(), [mu], res)


def deduce(rec: ExampleRecord) -> DeductionResult:
    return deduce_sequence(rec.p, rec.s, rec.flags, rec.e, rec.label)


def deduce_conditional(rec: ExampleRecord) -> DeductionResult | None:
    """Deduction with the record's hypothetical layers added, if it has any.

    Exact hypothetical layers extend the sequence; the rest only cap mu.
    """
    cond = rec.aux.conditional if rec.aux else None
    if cond is None:
        return None
    e = list(rec.e)
    caps = []
    for lv in sorted(cond.levels, key=lambda x: x.n):
        if lv.n == len(e) and lv.min is not None and lv.min == lv.max and not caps:
            e.append(lv.min)
        elif lv.max is not None:
            caps.append((lv.n, lv.max))
    return deduce_sequence(
        rec.p, rec.s, rec.flags, e, rec.label, caps, conditional_on=cond.hypothesis
    )


@dataclass(frozen=True)
class LevelVerdict:
    n: int
    predicted: int
    observed: int
    asymptotic_only: bool = False

    @property
    def ok(self) -> bool:
        return self.predicted == self.observed or self.asymptotic_only


def consistency_check(rec: ExampleRecord, result: DeductionResult) -> list[LevelVerdict]:
    """Compare mu p^n + lambda n + nu against every supplied layer."""
    if not result.exact:
        raise DomainError("consistency check needs exact mu, lambda and nu")
    start = result.asymptotic_from or 0
    out = []
    for n, G in enumerate(rec.levels):
        pred = predict_e(result.mu.exact, result.lambda_.exact, result.nu.exact, rec.p, n)
        obs = p_exponent(G, rec.p)
        out.append(LevelVerdict(n, pred, obs, asymptotic_only=n < start and pred != obs))
    return out


def mismatches(verdicts: Sequence[LevelVerdict]) -> list[LevelVerdict]:
    return [v for v in verdicts if not v.ok]
