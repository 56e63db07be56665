"""Certificateless keying with a Shamir-shared KGC master key on y^2 = x^3 + x.

Simulation code: nothing here is constant time or hardened.
"""

from ckde.curve import INFINITY, Affine, WeierstrassCurve, point_add, scalar_mul
from ckde.field import FieldElement, PrimeField, QuadExtElement
from ckde.keying import SystemParams, setup
from ckde.pairing import PairingParams, generate_params, params_from_prime, tate_pairing
from ckde.simnet import ScenarioConfig, run_scenario

__all__ = [
    "INFINITY", "Affine", "WeierstrassCurve", "point_add", "scalar_mul",
    "FieldElement", "PrimeField", "QuadExtElement",
    "SystemParams", "setup",
    "PairingParams", "generate_params", "params_from_prime", "tate_pairing",
    "ScenarioConfig", "run_scenario",
]

__version__ = "0.1.0"
