"""Request models.  Validation here is shape-level only; mathematical
preconditions (reduced words, dominance, cone membership) stay in the
core and surface as usage errors."""

from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..rootdata import CartanDatum

Word = List[int]
Counts = List[int]
# [[word, {"num": [[deg, coeff], ...], "den": ...}], ...]
ElementJson = List[Tuple[Word, Any]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class CartanSpec(_Strict):
    type: Optional[str] = None
    gcm: Optional[List[List[int]]] = None
    sym: Optional[List[int]] = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.type is None) == (self.gcm is None):
            raise ValueError("give either 'type' or 'gcm'+'sym'")
        if (self.gcm is None) != (self.sym is None):
            raise ValueError("'gcm' and 'sym' go together")
        return self

    def datum(self) -> CartanDatum:
        if self.type is not None:
            return CartanDatum.from_name(self.type)
        return CartanDatum(self.gcm, self.sym)


class BasisRequest(_Strict):
    cartan: CartanSpec
    word: Word
    height: Optional[int] = Field(default=None, ge=1, le=8)
    weight: Optional[Counts] = None

    @model_validator(mode="after")
    def _one_scope(self):
        if (self.height is None) == (self.weight is None):
            raise ValueError("give exactly one of 'height' or 'weight'")
        return self


class TwistRequest(_Strict):
    cartan: CartanSpec
    word: Word
    element: Optional[ElementJson] = None
    fup: Optional[Counts] = None
    direction: Literal["inverse", "forward"] = "inverse"

    @model_validator(mode="after")
    def _one_input(self):
        if (self.element is None) == (self.fup is None):
            raise ValueError("give exactly one of 'element' or 'fup'")
        return self


class MinorRequest(_Strict):
    cartan: CartanSpec
    lam: Counts = Field(alias="lambda")
    u: Word = []
    w: Word = []
    sign: Literal["highest", "lowest"] = "lowest"
    chart: Optional[Word] = None


class WordRequest(_Strict):
    cartan: CartanSpec
    word: Word


class PbwRevRequest(_Strict):
    cartan: CartanSpec
    word: Word
    height: int = Field(default=2, ge=1, le=6)


class SliceRequest(_Strict):
    cartan: CartanSpec
    word: Word
    weight: Counts


class CofiniteRequest(_Strict):
    cartan: CartanSpec
    word: Word
    element: ElementJson
    ambient: Optional[Word] = None


class MinorTwistRequest(_Strict):
    cartan: CartanSpec
    lam: Counts = Field(alias="lambda")
    u1: Word = []
    u2: Word = []
    word: Word


class TSystemRequest(_Strict):
    cartan: CartanSpec
    word: Word
    b: int
    d: int
    order: Optional[List[int]] = None


class TSystemTwistRequest(_Strict):
    cartan: CartanSpec
    word: Word
    b: int
    d: int


class ThetaStarRequest(_Strict):
    cartan: CartanSpec
    weight: Counts
    word: Optional[Word] = None
    monomial_cap: Optional[int] = Field(default=None, ge=1)


class AllRequest(_Strict):
    pass
