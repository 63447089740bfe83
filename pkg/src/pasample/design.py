"""Design specifications shared by the generators, oracle, and CLI."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import _kernels

DEFAULT_SEED = 1729


class DesignKind(Enum):
    CHAO = "chao"
    DBD = "dbd"
    CP = "cp"
    ORDERED_SYSTEMATIC = "ordered-systematic"
    RANDOM_SYSTEMATIC = "random-systematic"

    @property
    def kernel_id(self) -> int:
        return {
            DesignKind.CHAO: _kernels.CHAO,
            DesignKind.DBD: _kernels.DBD,
            DesignKind.CP: _kernels.CP,
            DesignKind.ORDERED_SYSTEMATIC: _kernels.OSYS,
            DesignKind.RANDOM_SYSTEMATIC: _kernels.RSYS,
        }[self]


class OrderPolicy(Enum):
    DEGREE_DESCENDING = "degree"
    AGE_ORDER = "age"
    ROMANTIC_CYCLE = "romantic"


@dataclass(frozen=True)
class DesignSpec:
    """Which sampling design drives a generator, fully pinned down.

    ``order_policy`` applies to (and is required by) the ordered systematic
    design only; ``circular`` switches the systematic traversal to wrap
    around the array.
    """

    kind: DesignKind
    order_policy: OrderPolicy | None = None
    circular: bool = False
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.kind is DesignKind.ORDERED_SYSTEMATIC:
            if self.order_policy is None:
                raise ValueError("ordered systematic requires an order policy")
        elif self.order_policy is not None:
            raise ValueError(f"{self.kind.value} does not take an order policy")

    @classmethod
    def of(
        cls,
        kind: "DesignKind | str",
        order_policy: "OrderPolicy | str | None" = None,
        circular: bool = False,
        seed: int = DEFAULT_SEED,
    ) -> "DesignSpec":
        if isinstance(kind, str):
            kind = DesignKind(kind)
        if isinstance(order_policy, str):
            order_policy = OrderPolicy(order_policy)
        if kind is DesignKind.ORDERED_SYSTEMATIC and order_policy is None:
            order_policy = OrderPolicy.DEGREE_DESCENDING
        return cls(kind=kind, order_policy=order_policy, circular=circular, seed=seed)
