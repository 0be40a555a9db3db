"""MacPherson perversities, classical King/GM perversities, duality and
transport along refinements.

A perversity is bound to its stratification (values are keyed by stratum id),
so moving one across stratifications always goes through an explicit
pushforward or pullback.  Values live in Z extended by +/-inf; the engine
never adds infinities of opposite sign.
"""

INF = float("inf")
NINF = float("-inf")


def is_ext(v):
    return isinstance(v, int) or v == INF or v == NINF


def ext_add(a, b):
    if a in (INF, NINF) and b in (INF, NINF) and a != b:
        raise ArithmeticError("inf + -inf is undefined")
    if a == INF or b == INF:
        return INF
    if a == NINF or b == NINF:
        return NINF
    return a + b


def ext_neg(a):
    if a == INF:
        return NINF
    if a == NINF:
        return INF
    return -a


def ext_to_json(v):
    if v == INF:
        return "+inf"
    if v == NINF:
        return "-inf"
    return v


def ext_from_json(v):
    if v == "+inf":
        return INF
    if v == "-inf":
        return NINF
    return int(v)


class Perversity:
    def __init__(self, stratification, values):
        """values: {singular stratum id: extended int}; regular strata are 0."""
        singular = set(stratification.singular_ids)
        extra = set(values) - singular
        if extra:
            raise ValueError(f"perversity assigns values on non-singular strata {sorted(extra)}")
        missing = singular - set(values)
        if missing:
            raise ValueError(f"perversity undefined on singular strata {sorted(missing)}")
        for v in values.values():
            if not is_ext(v):
                raise ValueError(f"bad perversity value {v!r}")
        self.stratification = stratification
        self.values = dict(values)

    def __call__(self, stratum_id):
        return self.values.get(stratum_id, 0)

    def __eq__(self, other):
        return (
            isinstance(other, Perversity)
            and self.stratification is other.stratification
            and self.values == other.values
        )

    def leq(self, other):
        keys = set(self.values) | set(other.values)
        return all(self(k) <= other(k) for k in keys)

    def to_json_dict(self):
        return {"values": {str(k): ext_to_json(v) for k, v in sorted(self.values.items())}}

    @classmethod
    def from_json_dict(cls, stratification, data):
        return cls(
            stratification, {int(k): ext_from_json(v) for k, v in data["values"].items()}
        )


def zero_perversity(strat):
    return Perversity(strat, {s: 0 for s in strat.singular_ids})


def top_perversity(strat):
    """t(S) = codim S - 2 on singular strata."""
    return Perversity(strat, {s: strat.codim(s) - 2 for s in strat.singular_ids})


def dual(p):
    """Dp = t - p, with D(+inf) = -inf and D(-inf) = +inf."""
    strat = p.stratification
    t = top_perversity(strat)
    return Perversity(
        strat, {s: ext_add(t(s), ext_neg(p(s))) for s in strat.singular_ids}
    )


def pushforward(pair, p):
    """(I* p)(T) = min p over the fine strata mapping to T; +inf on empty
    preimage."""
    if p.stratification is not pair.fine:
        raise ValueError("perversity is not bound to the fine stratification")
    coarse = pair.coarse
    values = {}
    for t in coarse.singular_ids:
        pre = [s for s in range(len(pair.fine.strata)) if pair.stratum_map[s] == t]
        values[t] = min((p(s) for s in pre), default=INF)
    return Perversity(coarse, values)


def pullback(pair, q):
    """(I^* q)(S) = q(I(S)); zero on exceptional strata since q vanishes on
    regular strata."""
    if q.stratification is not pair.coarse:
        raise ValueError("perversity is not bound to the coarse stratification")
    fine = pair.fine
    values = {}
    for s in fine.singular_ids:
        t = pair.stratum_map[s]
        values[s] = q(t) if t in q.values else 0
    return Perversity(fine, values)


class KPerversityReport:
    def __init__(self):
        self.k1_violations = []
        self.k2_violations = []
        self.relaxed_only_violations = []

    @property
    def is_k(self):
        return not (self.k1_violations or self.k2_violations or self.relaxed_only_violations)

    @property
    def is_k_relaxed(self):
        """K after weakening (K1) at 1-exceptional strata to p(S) >= 0."""
        return not (self.k1_violations or self.k2_violations)

    def to_json_dict(self):
        return {
            "is_K": self.is_k,
            "is_K_relaxed": self.is_k_relaxed,
            "K1_violations": self.k1_violations,
            "K2_violations": self.k2_violations,
            "one_exceptional_violations": self.relaxed_only_violations,
        }


def is_K_perversity(pair, p):
    """Check (K1) over pairs S <= Q sharing a coarse stratum and (K2) over
    equal-dimension pairs sharing a coarse stratum.

    (K1) failures at 1-exceptional strata that would pass the weakened bound
    p(S) >= 0 are reported separately, so callers can accept the relaxed
    regime of the coarsening theorem's first clauses."""
    fine = pair.fine
    top = top_perversity(fine)
    one_exc = pair.taxonomy().one_exceptional
    report = KPerversityReport()
    nstrata = len(fine.strata)
    for s in range(nstrata):
        for q in range(nstrata):
            if pair.stratum_map[s] != pair.stratum_map[q]:
                continue
            if s != q and fine.leq(s, q):
                lo, hi = p(q), ext_add(p(q), ext_add(top(s), ext_neg(top(q))))
                if not (lo <= p(s) <= hi):
                    entry = {
                        "S": s,
                        "Q": q,
                        "p(S)": ext_to_json(p(s)),
                        "bounds": [ext_to_json(lo), ext_to_json(hi)],
                    }
                    if s in one_exc and p(s) >= 0:
                        report.relaxed_only_violations.append(entry)
                    else:
                        report.k1_violations.append(entry)
            if s < q and fine.strata[s].dim == fine.strata[q].dim and p(s) != p(q):
                report.k2_violations.append(
                    {"S": s, "Q": q, "p(S)": ext_to_json(p(s)), "p(Q)": ext_to_json(p(q))}
                )
    return report


class KingPerversity:
    """Codimension-indexed perversity with p(0) = 0 and unit growth steps."""

    def __init__(self, values):
        values = [int(v) for v in values]
        if not values or values[0] != 0:
            raise ValueError("King perversity needs p(0) = 0")
        for k in range(len(values) - 1):
            if not values[k] <= values[k + 1] <= values[k] + 1:
                raise ValueError(
                    f"growth violated at codimension {k}: {values[k]} -> {values[k + 1]}"
                )
        self.values = tuple(values)

    def __call__(self, codim):
        if codim >= len(self.values):
            raise ValueError(f"King perversity undefined at codimension {codim}")
        return self.values[codim]

    def is_gm(self):
        return len(self.values) >= 3 and self.values[1] == self.values[2] == 0

    def to_json_list(self):
        return list(self.values)


def gm_zero(n):
    return KingPerversity([0] * (n + 1))


def gm_lower_middle(n):
    """Lower-middle GM perversity m(k) = floor((k-2)/2), clamped to 0 below
    codimension 2."""
    return KingPerversity([max(0, (k - 2) // 2) for k in range(n + 1)])


def from_king(kp, strat):
    return Perversity(strat, {s: kp(strat.codim(s)) for s in strat.singular_ids})
