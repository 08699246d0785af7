"""
Minimal-resource conditions for noiseless recovery of L targets:
MQ >= 2L (array elements), MK >= 2L (samples), P >= 2L (pulses).
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class ConditionReport:
    M: int
    Q: int
    K: int
    P: int
    L: int
    elements_ok: bool   # MQ >= 2L
    samples_ok: bool    # MK >= 2L
    pulses_ok: bool     # P >= 2L

    @property
    def all_ok(self) -> bool:
        return self.elements_ok and self.samples_ok and self.pulses_ok

    def summary(self) -> str:
        def mark(ok: bool) -> str:
            return "pass" if ok else "FAIL"
        return (
            f"MQ={self.M * self.Q}>={2 * self.L}:{mark(self.elements_ok)} "
            f"MK={self.M * self.K}>={2 * self.L}:{mark(self.samples_ok)} "
            f"P={self.P}>={2 * self.L}:{mark(self.pulses_ok)}"
        )


def check_recovery_conditions(M: int, Q: int, K: int, P: int, L: int) -> ConditionReport:
    need = 2 * L
    return ConditionReport(
        M=M, Q=Q, K=K, P=P, L=L,
        elements_ok=M * Q >= need,
        samples_ok=M * K >= need,
        pulses_ok=P >= need,
    )
