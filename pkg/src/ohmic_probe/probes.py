"""Named probe configurations (preparation + bath topology)."""
from dataclasses import dataclass

from .errors import DomainError
from .states import Ghz, Scenario, SingleQubit, TwoQubitBell, TwoQubitProduct, Werner


@dataclass(frozen=True)
class Probe:
    prep: object
    scenario: Scenario = Scenario.INDEPENDENT

    @property
    def label(self) -> str:
        side = "indep" if self.scenario is Scenario.INDEPENDENT else "common"
        prep = self.prep
        if isinstance(prep, SingleQubit):
            return "single"
        if isinstance(prep, TwoQubitProduct):
            return f"{side}-product"
        if isinstance(prep, TwoQubitBell):
            return f"{side}-bell"
        if isinstance(prep, Werner):
            return f"{side}-werner:{prep.p:g}"
        if isinstance(prep, Ghz):
            return f"{side}-ghz:{prep.n}"
        return repr(prep)


SINGLE = Probe(SingleQubit())
INDEP_PRODUCT = Probe(TwoQubitProduct(), Scenario.INDEPENDENT)
INDEP_BELL = Probe(TwoQubitBell("phi+"), Scenario.INDEPENDENT)
COMMON_PRODUCT = Probe(TwoQubitProduct(), Scenario.COMMON)
COMMON_BELL = Probe(TwoQubitBell("phi+"), Scenario.COMMON)

FOUR_SCHEMES = (INDEP_PRODUCT, INDEP_BELL, COMMON_PRODUCT, COMMON_BELL)


def parse_probe(label: str) -> Probe:
    """Inverse of ``Probe.label``: 'single', 'indep-bell', 'common-werner:0.5', 'indep-ghz:3'."""
    label = label.strip()
    if label == "single":
        return SINGLE
    side, _, rest = label.partition("-")
    scenarios = {"indep": Scenario.INDEPENDENT, "common": Scenario.COMMON}
    if side not in scenarios or not rest:
        raise DomainError(f"unknown probe label {label!r}")
    kind, _, arg = rest.partition(":")
    try:
        if kind == "product" and not arg:
            prep = TwoQubitProduct()
        elif kind == "bell" and not arg:
            prep = TwoQubitBell("phi+")
        elif kind == "werner":
            prep = Werner(float(arg))
        elif kind == "ghz":
            prep = Ghz(int(arg))
        else:
            raise DomainError(f"unknown probe label {label!r}")
    except ValueError as exc:
        raise DomainError(f"bad probe label {label!r}: {exc}") from exc
    return Probe(prep, scenarios[side])
