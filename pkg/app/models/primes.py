from pydantic import BaseModel, Field, ValidationError, validator
from typing import Optional
from enum import Enum

from sympy import isprime

from ..exceptions import ConfigError

class ExtensionKind(str, Enum):
    """Tame extension kinds"""
    BASE = "Base"
    UNRAM_QUAD = "UnramQuad"
    RAM_QUAD = "RamQuad"
    UNRAM_L = "UnramL"
    RAM_GALOIS_L = "RamGaloisL"
    RAM_L = "RamL"

class CoverCase(str, Enum):
    """Concrete double-cover models"""
    PGL2 = "PGL2"
    GL2 = "GL2"
    PGLL_DELTA = "PGLl_delta!=1"
    GLL_DELTA = "GLl_delta!=1"
    PGLL_SPLIT = "PGLl_split"
    GLL_SPLIT = "GLl_split"

class OutputFormat(str, Enum):
    """Report output formats"""
    JSON = "json"
    CSV = "csv"
    PRETTY = "pretty"

QUADRATIC_KINDS = (ExtensionKind.UNRAM_QUAD, ExtensionKind.RAM_QUAD)
UNRAMIFIED_KINDS = (ExtensionKind.UNRAM_QUAD, ExtensionKind.UNRAM_L)
RAMIFIED_KINDS = (ExtensionKind.RAM_QUAD, ExtensionKind.RAM_GALOIS_L, ExtensionKind.RAM_L)

class PrimeConfig(BaseModel):
    """Base field Q_p, working precision and the rank ell of GL(ell)"""
    p: int = Field(3, description="Odd residual characteristic")
    precision: int = Field(12, description="Stored p-digits of unit parts", alias="N")
    ell: int = Field(2, description="The prime ell of GL(ell, F)")
    strict: bool = Field(False, description="Run internal cross-checks on every call")

    @validator('p')
    def validate_p(cls, v):
        if v == 2 or not isprime(v):
            raise ValueError('p must be an odd prime')
        return v

    @validator('precision')
    def validate_precision(cls, v):
        if v < 8:
            raise ValueError('precision N must be at least 8')
        return v

    @validator('ell')
    def validate_ell(cls, v, values):
        if not isprime(v):
            raise ValueError('ell must be prime')
        p = values.get('p')
        if p is not None and v > 2 and p <= 2 * v:
            raise ValueError(f'residual characteristic {p} must exceed 2*ell = {2 * v}')
        return v

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    class Config:
        frozen = True
        populate_by_name = True

def build_prime_config(p: int, precision: int = 12, ell: int = 2, strict: bool = False) -> PrimeConfig:
    """Validate a configuration, mapping pydantic failures to ConfigError"""
    try:
        return PrimeConfig(p=p, N=precision, ell=ell, strict=strict)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc

class RunConfig(BaseModel):
    """CLI run configuration"""
    prime: PrimeConfig
    kind: Optional[ExtensionKind] = Field(None, description="Extension kind")
    delta: Optional[int] = Field(None, description="Integer Delta for ramified kinds")
    character_path: Optional[str] = Field(None, description="Character spec file")
    suite: str = Field("all", description="Suite selection")
    output_format: OutputFormat = Field(OutputFormat.JSON, description="Report format")
    seed: int = Field(0, description="Random seed")
    jobs: int = Field(1, description="Worker processes")
    dl_n: Optional[int] = Field(None, description="Rank for the dl suite")
    dl_q: Optional[int] = Field(None, description="Field size for the dl suite")
