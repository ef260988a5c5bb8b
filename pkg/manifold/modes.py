from enum import IntEnum

from manifold.errors import DomainError


class Family_Id(IntEnum):
    M24 = 0
    M25 = 1

    @classmethod
    def parse(cls, text: str) -> "Family_Id":
        try:
            return cls[text.upper()]
        except KeyError:
            raise DomainError(f"unknown family '{text}'") from None


class Tree_Strategy(IntEnum):
    # Kruskal over edge classes in generator order
    FIRST = 0
    # same, in reverse generator order (kills v for M25 with even n)
    LAST = 1


class Preset_Id(IntEnum):
    G25 = 0
    H25 = 1
    DUAL24 = 2
    SEIFERT_M24_2 = 3


class Component_Kind(IntEnum):
    COLLAPSED_EDGE_CLASS = 0
    ROTATION_AXIS = 1
