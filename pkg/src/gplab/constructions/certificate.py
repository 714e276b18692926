"""Certificates: an indicator expression plus empirical exceptional data.

A certificate claims that its indicator agrees with a target set for all
scanned ``n >= exceptional_bound``; mismatches below the bound are listed
explicitly.  The exceptional data is always determined by scanning against
an oracle, never assumed.

Builders may attach a ``predicate`` (a faster or more robust semantic
membership test) and a ``fast_scan`` strategy; both must agree with the
indicator wherever the indicator is decidable, which the test suite
checks on sampled ranges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from ..errors import ParseError
from ..gpexpr import Expr, eval_indicator, parse, to_text
from ..gpexpr.evaluate import _ConstCache
from ..realnum import DEFAULT_MAX_BITS


@dataclass
class Certificate:
    indicator: Expr
    target_description: str
    exceptional_bound: int = 0
    exceptional: tuple[int, ...] = ()
    predicate: Callable[[int], bool] | None = None
    fast_scan: Callable[[int, int], list[int]] | None = None
    meta: dict = field(default_factory=dict)

    def member(self, n: int, max_bits: int = DEFAULT_MAX_BITS) -> bool:
        if self.predicate is not None:
            return self.predicate(n)
        return eval_indicator(self.indicator, n, max_bits) == 1

    def members(self, lo: int, hi: int, max_bits: int = DEFAULT_MAX_BITS) -> list[int]:
        if self.fast_scan is not None:
            return self.fast_scan(lo, hi)
        if self.predicate is not None:
            return [n for n in range(lo, hi + 1) if self.predicate(n)]
        cache = _ConstCache()
        return [
            n
            for n in range(lo, hi + 1)
            if eval_indicator(self.indicator, n, max_bits, cache) == 1
        ]

    # -- serialization ------------------------------------------------------
    def to_file_text(self) -> str:
        lines = [f"target: {self.target_description}"]
        lines.append(f"exceptional_bound: {self.exceptional_bound}")
        lines.append("exceptional: " + " ".join(str(x) for x in self.exceptional))
        for key in sorted(self.meta):
            value = self.meta[key]
            if isinstance(value, (str, int, Fraction)) and "\n" not in str(value):
                lines.append(f"{key}: {value}")
        lines.append("")
        lines.append(to_text(self.indicator))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_file_text(cls, text: str) -> "Certificate":
        header: dict[str, str] = {}
        lines = text.splitlines()
        i = 0
        for i, line in enumerate(lines):
            if not line.strip():
                break
            if ":" not in line:
                raise ParseError(f"malformed header line {line!r}", i + 1, 1)
            key, _, value = line.partition(":")
            header[key.strip()] = value.strip()
        program = "\n".join(lines[i + 1 :])
        indicator = parse(program)
        exc = tuple(int(tok) for tok in header.get("exceptional", "").split())
        meta = {
            k: v
            for k, v in header.items()
            if k not in ("target", "exceptional_bound", "exceptional")
        }
        return cls(
            indicator=indicator,
            target_description=header.get("target", ""),
            exceptional_bound=int(header.get("exceptional_bound", "0")),
            exceptional=exc,
            meta=meta,
        )


@dataclass
class VerificationReport:
    range_lo: int
    range_hi: int
    members_found: tuple[int, ...]
    oracle_members: tuple[int, ...]
    symmetric_difference: tuple[int, ...]
    exceptional_bound: int
    undecided: tuple[int, ...] = ()

    @property
    def clean_beyond_bound(self) -> bool:
        return all(x < self.exceptional_bound for x in self.symmetric_difference)

    def to_text(self) -> str:
        rows = [
            f"range: {self.range_lo} {self.range_hi}",
            "members_found: " + " ".join(map(str, self.members_found)),
            "oracle_members: " + " ".join(map(str, self.oracle_members)),
            "symmetric_difference: " + " ".join(map(str, self.symmetric_difference)),
            f"exceptional_bound: {self.exceptional_bound}",
        ]
        if self.undecided:
            rows.append("undecided: " + " ".join(map(str, self.undecided)))
        return "\n".join(rows) + "\n"


def verify_certificate(
    cert: Certificate,
    oracle_members: Iterable[int],
    lo: int,
    hi: int,
    max_bits: int = DEFAULT_MAX_BITS,
    update: bool = True,
) -> VerificationReport:
    """Scan the certificate on [lo, hi] and compare with oracle membership.

    The exceptional bound is (re)computed as one past the largest mismatch
    on the scanned range; with ``update=True`` the certificate's stored
    exceptional data is replaced by the scan results.
    """
    found = cert.members(lo, hi, max_bits)
    oracle = sorted(x for x in set(oracle_members) if lo <= x <= hi)
    sym = sorted(set(found).symmetric_difference(oracle))
    bound = max(sym) + 1 if sym else lo
    report = VerificationReport(
        range_lo=lo,
        range_hi=hi,
        members_found=tuple(found),
        oracle_members=tuple(oracle),
        symmetric_difference=tuple(sym),
        exceptional_bound=bound,
    )
    if update:
        cert.exceptional_bound = bound
        cert.exceptional = tuple(sym)
        cert.meta.setdefault("scanned_to", hi)
        cert.meta["scanned_to"] = max(int(cert.meta["scanned_to"]), hi)
    return report
