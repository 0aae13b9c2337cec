"""Physical register description and JSON config handling.

A register holds one NV electron spin, the host nitrogen (fixed in its
m_N = 1 state throughout), and one to four carbon-13 spins described by
their secular/anisotropic hyperfine couplings. All frequencies are in MHz
(values of H/2pi), all times in microseconds.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


class ConfigError(ValueError):
    """Raised for malformed or physically invalid register configs."""


@dataclass(frozen=True)
class HyperfineCoupling:
    """Secular (a_zz) and anisotropic (a_zx) hyperfine couplings in MHz."""

    a_zz: float
    a_zx: float
    label: int = 1

    def __post_init__(self):
        if self.a_zz == 0.0 and self.a_zx == 0.0:
            raise ConfigError("a physical carbon needs a non-zero coupling pair")


@dataclass(frozen=True)
class SpinSystemConfig:
    """Field and coupling parameters defining the register.

    Attributes
    ----------
    d : zero-field splitting (MHz)
    nu_e : electron Larmor frequency (MHz, signed)
    nu_c : carbon-13 Larmor frequency (MHz, positive by convention)
    a_n : nitrogen hyperfine coupling (MHz)
    carbons : hyperfine couplings, ascending label order
    b0 : field strength in mT (informational only)
    """

    d: float
    nu_e: float
    nu_c: float
    a_n: float
    carbons: tuple[HyperfineCoupling, ...]
    b0: float = 0.0

    def __post_init__(self):
        if self.nu_c <= 0:
            raise ConfigError("nu_c must be positive (sign convention)")
        if not 1 <= len(self.carbons) <= 4:
            raise ConfigError("register supports 1 to 4 carbons")
        labels = [c.label for c in self.carbons]
        if sorted(labels) != labels or len(set(labels)) != len(labels):
            raise ConfigError("carbon labels must be unique and ascending")

    @property
    def n_carbons(self) -> int:
        return len(self.carbons)

    def single_carbon(self) -> HyperfineCoupling:
        if len(self.carbons) != 1:
            raise ConfigError("operation requires exactly one carbon")
        return self.carbons[0]

    def subset(self, labels: list[int]) -> "SpinSystemConfig":
        """A new config keeping only the carbons with the given labels."""
        by_label = {c.label: c for c in self.carbons}
        try:
            chosen = tuple(by_label[l] for l in sorted(labels))
        except KeyError as exc:
            raise ConfigError(f"no carbon with label {exc.args[0]}") from exc
        return SpinSystemConfig(self.d, self.nu_e, self.nu_c, self.a_n, chosen, self.b0)


_REQUIRED_KEYS = {"D_MHz", "nu_e_MHz", "nu_C_MHz", "A_N_MHz", "carbons"}
_OPTIONAL_KEYS = {"B0_mT", "name"}


def validate_system_dict(doc: dict) -> None:
    """Structural validation of a system config document."""
    if not isinstance(doc, dict):
        raise ConfigError("system config must be a JSON object")
    missing = _REQUIRED_KEYS - doc.keys()
    if missing:
        raise ConfigError(f"system config missing keys: {sorted(missing)}")
    unknown = doc.keys() - _REQUIRED_KEYS - _OPTIONAL_KEYS
    if unknown:
        raise ConfigError(f"system config has unknown keys: {sorted(unknown)}")
    for key in ("D_MHz", "nu_e_MHz", "nu_C_MHz", "A_N_MHz"):
        if not isinstance(doc[key], (int, float)):
            raise ConfigError(f"{key} must be a number")
    if not isinstance(doc["carbons"], list) or not doc["carbons"]:
        raise ConfigError("carbons must be a non-empty list")
    for i, c in enumerate(doc["carbons"]):
        if not isinstance(c, dict) or not {"A_zz_MHz", "A_zx_MHz"} <= c.keys():
            raise ConfigError(f"carbons[{i}] needs A_zz_MHz and A_zx_MHz")


def system_from_dict(doc: dict) -> SpinSystemConfig:
    validate_system_dict(doc)
    carbons = tuple(
        HyperfineCoupling(float(c["A_zz_MHz"]), float(c["A_zx_MHz"]), label=i + 1)
        for i, c in enumerate(doc["carbons"])
    )
    return SpinSystemConfig(
        d=float(doc["D_MHz"]),
        nu_e=float(doc["nu_e_MHz"]),
        nu_c=float(doc["nu_C_MHz"]),
        a_n=float(doc["A_N_MHz"]),
        carbons=carbons,
        b0=float(doc.get("B0_mT", 0.0)),
    )


def system_to_dict(cfg: SpinSystemConfig) -> dict:
    return {
        "D_MHz": cfg.d,
        "nu_e_MHz": cfg.nu_e,
        "nu_C_MHz": cfg.nu_c,
        "A_N_MHz": cfg.a_n,
        "B0_mT": cfg.b0,
        "carbons": [{"A_zz_MHz": c.a_zz, "A_zx_MHz": c.a_zx} for c in cfg.carbons],
    }


def load_system(path: str | Path) -> SpinSystemConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return system_from_dict(doc)


def save_system(cfg: SpinSystemConfig, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(system_to_dict(cfg), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def data_path(name: str) -> Path:
    """Path to a bundled data file, e.g. 'system_2q.json' or 'sequences/cnot.json'."""
    root = resources.files("icspin") / "data"
    p = Path(str(root / name))
    if not p.exists():
        raise FileNotFoundError(f"no bundled data file named {name!r}")
    return p


def default_system() -> SpinSystemConfig:
    """The bundled single-carbon reference register."""
    return load_system(data_path("system_2q.json"))


def registers_system() -> SpinSystemConfig:
    """The bundled four-carbon register."""
    return load_system(data_path("system_4c.json"))
