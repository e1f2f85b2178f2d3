from pydantic_settings import BaseSettings
from typing import Optional
import os

class Settings(BaseSettings):
    """Workbench settings"""

    # Base field
    p: int = int(os.getenv("LANGLANDS_P", "3"))
    precision: int = int(os.getenv("LANGLANDS_PRECISION", "12"))
    ell: int = int(os.getenv("LANGLANDS_ELL", "2"))
    strict: bool = os.getenv("LANGLANDS_STRICT", "false").lower() == "true"

    # Runs
    seed: int = int(os.getenv("LANGLANDS_SEED", "0"))
    jobs: int = int(os.getenv("LANGLANDS_JOBS", "1"))
    report_format: str = os.getenv("LANGLANDS_REPORT_FORMAT", "json")
    config_path: Optional[str] = os.getenv("LANGLANDS_CONFIG")

    # Exact arithmetic
    max_conductor: int = int(os.getenv("LANGLANDS_MAX_CONDUCTOR", "20000"))

    # Suites
    level_cutoff: int = int(os.getenv("LANGLANDS_LEVEL_CUTOFF", "3"))
    samples: int = int(os.getenv("LANGLANDS_SAMPLES", "100"))

    # Logging
    log_level: str = os.getenv("LOG_LEVEL", "INFO")
    log_format: str = os.getenv("LOG_FORMAT", "json")

    title: str = "Tame Langlands Workbench"
    report_schema: str = "v1"

    class Config:
        env_file = ".env"
        case_sensitive = False

# Create settings instance
settings = Settings()

# p-adic configuration
PADIC_CONFIG = {
    "precision": settings.precision,
    "min_precision": 8,
    "strict": settings.strict,
    "sqrt_tie_break": "lower-half",
}

# Exact value configuration
EXACT_CONFIG = {
    "max_conductor": settings.max_conductor,
    "root_tolerance": 1e-6,
}

# Symbols configuration
SYMBOLS_CONFIG = {
    "default_psi_level": 1,
    "gauss_stabilization_steps": 1,
    "oracle_max_points": 1_000_000,
    "hilbert_oracle_cache": 4096,
}

# Character configuration
CHARACTER_CONFIG = {
    "alpha_samples": int(os.getenv("ALPHA_SAMPLES", "50")),
    "minimality_cutoff": 2,
    "max_residue_degree": 6,
}

# Suite configuration
SUITE_CONFIG = {
    "level_cutoff": settings.level_cutoff,
    "odd_level_cutoff": int(os.getenv("LANGLANDS_ODD_LEVEL_CUTOFF", "1")),
    "samples": settings.samples,
    "seed": settings.seed,
    "separation_widen_steps": 2,
    "suites": [
        "omega", "mu", "lambda", "deltadelta", "lminusn", "window", "collapse",
        "weil", "hilbert", "depth", "cover", "qform", "dl", "separation", "invariance",
    ],
    "anchors": {
        "omega": "omega-identity: tau0((w-wbar)/2delta) = Omega(w/delta) for n(w)=0",
        "mu": "mu-twist: gamma(alpha,Y) = (x,Delta) gamma(Delta,psi) mu((w-wbar)/2delta) mu(w)",
        "lambda": "lambda(sigma) = (-1)^(r+1) = (x,Delta) gamma(Delta,psi)",
        "deltadelta": "Delta_chi(delta) = (x,Delta) gamma(Delta,psi)",
        "lminusn": "minimal alpha: l = -n",
        "window": "(F*K0 \\ F*K1) cap E* = F*A",
        "collapse": "tau0(Delta0(w)) rho_tau(w) = tau0((-1)^sum k)",
        "weil": "Weil index calculus and gamma(Delta,psi) = (-1)^level(psi)",
        "hilbert": "Hilbert symbol closed form = solvability oracle",
        "depth": "n(w) closed forms = definitional membership",
        "cover": "kappa bijective, lambda^2 = tau(2rho), PGL2 split iff (-1,Delta)=1",
        "qform": "Gram matrix diag(4xyDelta, -4xyDelta^2), gamma(alpha,Y) closed form",
        "dl": "Carter sum reduction and depth-zero matching",
        "separation": "same Cartan: Weyl-conjugate; different Cartan: witness with n(w)=0",
        "invariance": "formula invariant under positive system, tau0 and Weyl symmetrization",
    },
}

# Deligne-Lusztig configuration
DL_CONFIG = {
    "allowed": [(2, 3), (2, 5), (2, 7), (3, 2), (3, 3)],
    "dlog_bound": 3 ** 6,
    "normalizer_samples": int(os.getenv("DL_NORMALIZER_SAMPLES", "20")),
}

# Cover configuration
COVER_CONFIG = {
    "level_cutoff": settings.level_cutoff,
    "kappa_samples": int(os.getenv("COVER_KAPPA_SAMPLES", "200")),
    "weyl_samples": int(os.getenv("COVER_WEYL_SAMPLES", "100")),
}
