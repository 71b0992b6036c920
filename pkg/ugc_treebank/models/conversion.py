"""UD/SUD conversion table rows."""
from pydantic import BaseModel, ConfigDict, Field


class ConversionRow(BaseModel):
    """``ud_rel <TAB> sud_rel <TAB> flip``.

    For flip rows ``sud_rel`` is the label the content word takes under the
    function word that becomes its head.
    """
    model_config = ConfigDict(frozen=True)

    ud_rel: str = Field(..., min_length=1)
    sud_rel: str = Field(..., min_length=1)
    flip: bool = False
