"""Reciprocity checks: spectra agreement versus cross-count agreement.

For a pair of groups G, H the interesting comparison is between
|M(G, |H|)| and |M(H, |G|)| (zero-sum multiset counts of each group at the
other's order).  The theorem under test says these counts agree exactly
when the order spectra of G and H agree on every shared divisor, so each
pair check records both sides plus an iff-consistency verdict.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from time import perf_counter

from .counting import count_formula
from .exactmath import divisors
from .groups import (
    Abelian,
    Dicyclic,
    Dihedral,
    GroupDescriptor,
    OrderSpectrum,
    enumerate_abelian,
    make_product,
    order_spectrum,
    parse_group,
)

FAMILIES = ("abelian", "dihedral", "dicyclic", "products")

RECORD_FIELDS = (
    "g", "h", "order_g", "order_h", "spectra_agree", "witness_divisor",
    "count_g_at_h", "count_h_at_g", "iff_consistent",
)


@dataclass(frozen=True)
class ReciprocityReport:
    """Outcome of one pair check."""

    g: GroupDescriptor
    h: GroupDescriptor
    spectra_agree: bool
    witness_divisor: int | None
    count_g_at_h: int
    count_h_at_g: int
    counts_agree: bool
    iff_consistent: bool

    def to_record(self) -> dict:
        """JSON-ready dict in canonical field order; counts as decimal strings."""
        return {
            "g": self.g.notation(),
            "h": self.h.notation(),
            "order_g": self.g.order,
            "order_h": self.h.order,
            "spectra_agree": self.spectra_agree,
            "witness_divisor": self.witness_divisor,
            "count_g_at_h": str(self.count_g_at_h),
            "count_h_at_g": str(self.count_h_at_g),
            "iff_consistent": self.iff_consistent,
        }


def report_from_record(record: dict) -> ReciprocityReport:
    """Rebuild a report from its JSON record (used when resuming a scan log)."""
    cgh = int(record["count_g_at_h"])
    chg = int(record["count_h_at_g"])
    return ReciprocityReport(
        g=parse_group(record["g"]),
        h=parse_group(record["h"]),
        spectra_agree=record["spectra_agree"],
        witness_divisor=record["witness_divisor"],
        count_g_at_h=cgh,
        count_h_at_g=chg,
        counts_agree=cgh == chg,
        iff_consistent=record["iff_consistent"],
    )


@dataclass
class ScanSummary:
    """Aggregate result of a pair scan."""

    pairs_checked: int
    violations: list[ReciprocityReport]
    max_order: int
    families: tuple[str, ...]
    elapsed_ms: int

    def to_record(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "violations": len(self.violations),
            "max_order": self.max_order,
            "families": list(self.families),
        }


def _condition_from_spectra(sg: OrderSpectrum, sh: OrderSpectrum) -> tuple[bool, int | None]:
    for d in divisors(gcd(sg.group_order, sh.group_order)):
        if sg.count_of(d) != sh.count_of(d):
            return False, d
    return True, None


def spectrum_condition(g, h) -> tuple[bool, int | None]:
    """(True, None) if the spectra agree on every shared divisor, else (False, smallest witness)."""
    return _condition_from_spectra(order_spectrum(g), order_spectrum(h))


def reciprocity_check(g: GroupDescriptor, h: GroupDescriptor) -> ReciprocityReport:
    """Run the full pair check: spectra condition plus both cross counts."""
    sg = order_spectrum(g)
    sh = order_spectrum(h)
    agree, witness = _condition_from_spectra(sg, sh)
    count_gh = count_formula(sg, sh.group_order)
    count_hg = count_formula(sh, sg.group_order)
    counts_agree = count_gh == count_hg
    return ReciprocityReport(
        g=g, h=h, spectra_agree=agree, witness_divisor=witness,
        count_g_at_h=count_gh, count_h_at_g=count_hg,
        counts_agree=counts_agree, iff_consistent=agree == counts_agree,
    )


def divisor_gap_free(n: int) -> bool:
    """True when n has no pair of divisors d+1 > d > 1 (consecutive divisors)."""
    if n < 1:
        raise ValueError(f"divisor_gap_free requires a positive integer, got {n}")
    divs = set(divisors(n))
    return not any(d > 1 and d + 1 in divs for d in divs)


def family_descriptors(families, max_order: int) -> list[GroupDescriptor]:
    """Deduplicated descriptors of the chosen families up to max_order, in scan order.

    Scan order is (order, notation); duplicates are recognized by equal
    (order, spectrum) so e.g. a two-factor product that is isomorphic to a
    listed group appears only once.
    """
    chosen = set(families)
    unknown = chosen - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown families {sorted(unknown)}; valid names: {', '.join(FAMILIES)}")
    if max_order < 1:
        raise ValueError(f"max_order must be positive, got {max_order}")
    abelian = [Abelian(g) for n in range(1, max_order + 1) for g in enumerate_abelian(n)]
    dihedral = [Dihedral(k) for k in range(3, max_order // 2 + 1)]
    dicyclic = [Dicyclic(k) for k in range(2, max_order // 4 + 1)]
    pool: list[GroupDescriptor] = []
    if "abelian" in chosen:
        pool.extend(abelian)
    if "dihedral" in chosen:
        pool.extend(dihedral)
    if "dicyclic" in chosen:
        pool.extend(dicyclic)
    if "products" in chosen:
        bases = [d for d in abelian if d.order >= 2] + dihedral + dicyclic
        for i, left in enumerate(bases):
            for right in bases[i:]:
                if left.order * right.order <= max_order:
                    pool.append(make_product((left, right)))
    pool.sort(key=lambda d: (d.order, d.notation()))
    seen = set()
    out = []
    for desc in pool:
        key = (desc.order, order_spectrum(desc).key())
        if key not in seen:
            seen.add(key)
            out.append(desc)
    return out


def pair_sequence(descriptors) -> list[tuple[GroupDescriptor, GroupDescriptor]]:
    """All unordered pairs (diagonal included) in canonical scan order."""
    return [(descriptors[i], descriptors[j])
            for i in range(len(descriptors))
            for j in range(i, len(descriptors))]


def pair_key(g: GroupDescriptor, h: GroupDescriptor) -> tuple[str, str]:
    return g.notation(), h.notation()


def _check_pair(pair) -> ReciprocityReport:
    return reciprocity_check(*pair)


def _cached_check(g, h, spectra: dict, counts: dict) -> ReciprocityReport:
    for d in (g, h):
        if d not in spectra:
            spectra[d] = order_spectrum(d)
    sg, sh = spectra[g], spectra[h]
    agree, witness = _condition_from_spectra(sg, sh)
    for d, m in ((g, sh.group_order), (h, sg.group_order)):
        if (d, m) not in counts:
            counts[(d, m)] = count_formula(spectra[d], m)
    count_gh = counts[(g, sh.group_order)]
    count_hg = counts[(h, sg.group_order)]
    counts_agree = count_gh == count_hg
    return ReciprocityReport(
        g=g, h=h, spectra_agree=agree, witness_divisor=witness,
        count_g_at_h=count_gh, count_h_at_g=count_hg,
        counts_agree=counts_agree, iff_consistent=agree == counts_agree,
    )


def iter_pair_reports(descriptors, existing=None, parallelism: int = 1):
    """Yield one report per pair in canonical order.

    existing maps pair_key -> ReciprocityReport for pairs already on record
    (they are passed through, not recomputed).  With parallelism > 1 the
    missing pairs are computed in worker processes; results are still yielded
    in canonical order, so output is byte-for-byte independent of parallelism.
    """
    pairs = pair_sequence(descriptors)
    existing = existing or {}
    if parallelism <= 1:
        spectra: dict = {}
        counts: dict = {}
        for g, h in pairs:
            report = existing.get(pair_key(g, h))
            yield report if report is not None else _cached_check(g, h, spectra, counts)
        return
    missing = [(g, h) for g, h in pairs if pair_key(g, h) not in existing]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        chunk = max(1, len(missing) // (parallelism * 8)) if missing else 1
        computed = pool.map(_check_pair, missing, chunksize=chunk)
        for g, h in pairs:
            report = existing.get(pair_key(g, h))
            yield report if report is not None else next(computed)


def conjecture_scan(families, max_order: int, parallelism: int = 1) -> ScanSummary:
    """Check every pair from the chosen families up to max_order."""
    start = perf_counter()
    family_tuple = tuple(f for f in FAMILIES if f in set(families))
    descriptors = family_descriptors(family_tuple, max_order)
    reports = list(iter_pair_reports(descriptors, parallelism=parallelism))
    violations = [r for r in reports if not r.iff_consistent]
    elapsed_ms = int((perf_counter() - start) * 1000)
    return ScanSummary(
        pairs_checked=len(reports), violations=violations,
        max_order=max_order, families=family_tuple, elapsed_ms=elapsed_ms,
    )


def verify_theorem(max_order: int, abelian_only: bool = True) -> ScanSummary:
    """Scan all pairs up to max_order; abelian_only=False adds every family."""
    return conjecture_scan(("abelian",) if abelian_only else FAMILIES, max_order)
