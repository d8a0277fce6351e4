"""The two parameter-scaling regimes used by every KPI."""

from __future__ import annotations

import enum


class Strand(enum.IntEnum):
    # fixed bandwidth, antenna count scaled with (f / f_base)^2
    S1_FIXED_BW = 1
    # fixed antenna count, bandwidth scaled per frequency
    S2_FIXED_ANTENNAS = 2

    @classmethod
    def parse(cls, value: int | str | Strand) -> Strand:
        if isinstance(value, Strand):
            return value
        if isinstance(value, str):
            key = value.strip().upper()
            for member in cls:
                if key in (member.name, str(member.value)):
                    return member
            raise ValueError(f"unknown strand {value!r}")
        return cls(int(value))
