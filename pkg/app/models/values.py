from pydantic import BaseModel, Field, validator
from typing import Optional, List, Dict

from .primes import ExtensionKind

class CycIntModel(BaseModel):
    """Cyclotomic integer sum coeffs[i] zeta_conductor^i"""
    conductor: int = Field(..., description="Minimal conductor m")
    coeffs: List[int] = Field(..., description="Coefficients in the reduced power basis")

class ExactValueModel(BaseModel):
    """q^(qHalfExp/2) times a cyclotomic integer"""
    q_half_exp: int = Field(0, alias="qHalfExp", description="Exponent of q^(1/2)")
    conductor: int
    coeffs: List[int]
    q: Optional[int] = None
    root_phase: Optional[str] = Field(None, alias="rootPhase", description="k/M when the cyclotomic part is a root of unity")

    class Config:
        populate_by_name = True

class PadicModel(BaseModel):
    """p^v times the unit with base-p digits d0..d_(N-1)"""
    v: int = 0
    unit_digits: List[int] = Field(default_factory=list, alias="unitDigits", description="Empty for zero")

    @validator('unit_digits')
    def validate_digits(cls, v):
        if any(d < 0 for d in v):
            raise ValueError('unitDigits must be non-negative')
        return v

    class Config:
        populate_by_name = True

class ExtElementModel(BaseModel):
    """p^pPower * sum coeffs[i] x^i, each coefficient as base-p digits"""
    p_power: int = Field(0, alias="pPower")
    coeffs: List[List[int]] = Field(..., description="Digit lists, coefficients low to high")

    class Config:
        populate_by_name = True

class ExtensionModel(BaseModel):
    """Extension descriptor"""
    kind: ExtensionKind
    p: int
    ell: int = 2
    delta: Optional[PadicModel] = Field(None, alias="Delta")

    class Config:
        populate_by_name = True

class CharacterSpecModel(BaseModel):
    """Character file: chi(varpi) = zeta_m^k, tame exponent t, wild element alpha"""
    uniformizer_value_order: int = Field(1, alias="uniformizerValueOrder")
    uniformizer_value_exp: int = Field(0, alias="uniformizerValueExp")
    tame_exponent: int = Field(0, alias="tameExponent")
    alpha: Optional[ExtElementModel] = None

    @validator('uniformizer_value_order')
    def validate_order(cls, v):
        if v < 1:
            raise ValueError('uniformizerValueOrder must be positive')
        return v

    class Config:
        populate_by_name = True

class FormulaValueModel(BaseModel):
    """Exact part and symbolic positive part of F(chi~)(w)"""
    exact: ExactValueModel
    norm: Dict[str, str] = Field(default_factory=dict, description="Positive factors as tag -> exponent")
    depth: Optional[str] = Field(None, description="n(w)")

class SplitReport(BaseModel):
    """PGL(2) cover splitting test"""
    splits: bool
    hilbert_minus1_delta: int = Field(..., alias="hilbertMinus1Delta")

    class Config:
        populate_by_name = True

class DLValueModel(BaseModel):
    """Deligne-Lusztig value with its Carter-sum cross-check"""
    value: CycIntModel
    carter_sum: Optional[CycIntModel] = Field(None, alias="carterSum")
    normalizer_identity: Optional[bool] = Field(None, alias="normalizerIdentity")

    class Config:
        populate_by_name = True
