from .base_schema import BaseSchema
from .presentation_document import *
from .reports import *

__all__ = [
    "BaseSchema",
    "CutReport",
    "LinkingReport",
    "MildnessReport",
    "PresentationDocument",
    "Relation",
    "RelationKind",
]
