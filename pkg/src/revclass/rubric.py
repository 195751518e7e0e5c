"""Label model for review comments: 17 subcategories grouped into 5 classes."""
from __future__ import annotations

from enum import Enum


class Group(Enum):
    """The five high-level comment classes, in canonical (alphabetical) order."""

    DISCUSSION = "Discussion"
    DOCUMENTATION = "Documentation"
    FALSE_POSITIVE = "False Positive"
    FUNCTIONAL = "Functional"
    REFACTORING = "Refactoring"


# Canonical class order used everywhere a class index is needed (confusion
# matrices, probability columns, model outputs).
GROUP_ORDER: tuple[Group, ...] = (
    Group.DISCUSSION,
    Group.DOCUMENTATION,
    Group.FALSE_POSITIVE,
    Group.FUNCTIONAL,
    Group.REFACTORING,
)

GROUP_NAMES: tuple[str, ...] = tuple(g.value for g in GROUP_ORDER)


class Subcategory(Enum):
    # Functional group
    FUNCTIONAL = "Functional"
    LOGICAL = "Logical"
    VALIDATION = "Validation"
    RESOURCE = "Resource"
    TIMING = "Timing"
    SUPPORT = "Support"
    INTERFACE = "Interface"
    # Refactoring group
    SOLUTION_APPROACH = "Solution Approach"
    ALTERNATE_OUTPUT = "Alternate Output"
    CODE_ORGANIZATION = "Code Organization"
    VARIABLE_NAMING = "Variable Naming"
    VISUAL_REPRESENTATION = "Visual Representation"
    # Documentation group
    DOCUMENTATION = "Documentation"
    # Discussion group
    DESIGN_DISCUSSION = "Design Discussion"
    QUESTION = "Question"
    PRAISE = "Praise"
    # False positive group
    FALSE_POSITIVE = "False Positive"


SUBCATEGORY_GROUPS: dict[Subcategory, Group] = {
    Subcategory.FUNCTIONAL: Group.FUNCTIONAL,
    Subcategory.LOGICAL: Group.FUNCTIONAL,
    Subcategory.VALIDATION: Group.FUNCTIONAL,
    Subcategory.RESOURCE: Group.FUNCTIONAL,
    Subcategory.TIMING: Group.FUNCTIONAL,
    Subcategory.SUPPORT: Group.FUNCTIONAL,
    Subcategory.INTERFACE: Group.FUNCTIONAL,
    Subcategory.SOLUTION_APPROACH: Group.REFACTORING,
    Subcategory.ALTERNATE_OUTPUT: Group.REFACTORING,
    Subcategory.CODE_ORGANIZATION: Group.REFACTORING,
    Subcategory.VARIABLE_NAMING: Group.REFACTORING,
    Subcategory.VISUAL_REPRESENTATION: Group.REFACTORING,
    Subcategory.DOCUMENTATION: Group.DOCUMENTATION,
    Subcategory.DESIGN_DISCUSSION: Group.DISCUSSION,
    Subcategory.QUESTION: Group.DISCUSSION,
    Subcategory.PRAISE: Group.DISCUSSION,
    Subcategory.FALSE_POSITIVE: Group.FALSE_POSITIVE,
}


def _normalize(name: str) -> str:
    return " ".join(name.split()).casefold()


_SUBCATEGORY_LOOKUP: dict[str, Subcategory] = {
    _normalize(sub.value): sub for sub in Subcategory
}
# Accept the long-form spelling some exports use for the support row.
_SUBCATEGORY_LOOKUP[_normalize("Support Issues")] = Subcategory.SUPPORT

_GROUP_LOOKUP: dict[str, Group] = {_normalize(g.value): g for g in Group}
_GROUP_LOOKUP[_normalize("FalsePositive")] = Group.FALSE_POSITIVE


def parse_subcategory(name: str | Subcategory) -> Subcategory:
    """Resolve a subcategory from its canonical name (case/spacing tolerant)."""
    if isinstance(name, Subcategory):
        return name
    try:
        return _SUBCATEGORY_LOOKUP[_normalize(name)]
    except KeyError:
        raise ValueError(f"unknown subcategory: {name!r}") from None


def parse_group(name: str | Group) -> Group:
    if isinstance(name, Group):
        return name
    try:
        return _GROUP_LOOKUP[_normalize(name)]
    except KeyError:
        raise ValueError(f"unknown group: {name!r}") from None


def group_of(subcategory: str | Subcategory) -> Group:
    """Map a subcategory to its high-level group. Total over the 17 values."""
    return SUBCATEGORY_GROUPS[parse_subcategory(subcategory)]
