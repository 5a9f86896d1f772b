import attr

from typing import Any, Callable, Iterator

from ..errors import DimensionMismatchError, PreconditionError
from .vector import LinearElement


@attr.s(slots=True, frozen=True, kw_only=True)
class AnchorTuple:
    """
    The fixed elements a_2, ..., a_n occupying the trailing slots of every n-norm evaluation.

    ``normalized`` records that every anchor has instance magnitude 1; it is a promise
    made by whoever built the tuple (see ``normalize``), not something recomputed here.
    """

    anchors: tuple[LinearElement, ...] = attr.ib(converter=tuple)
    normalized: bool = attr.ib(default=False)

    @anchors.validator
    def _(self, attribute, value) -> None:
        if not value:
            raise PreconditionError("an n-norm needs n >= 2, i.e. at least one anchor")
        first = value[0]
        for anchor in value[1:]:
            if type(anchor) is not type(first) or anchor.coords.shape != first.coords.shape:
                raise DimensionMismatchError("all anchors must share one type and dimension")

    @classmethod
    def of(cls, *anchors: LinearElement, normalized: bool = False) -> "AnchorTuple":
        return cls(anchors=anchors, normalized=normalized)

    @property
    def n(self) -> int:
        return len(self.anchors) + 1

    def __iter__(self) -> Iterator[LinearElement]:
        return iter(self.anchors)

    def __len__(self) -> int:
        return len(self.anchors)

    def __getitem__(self, idx: int) -> LinearElement:
        return self.anchors[idx]

    def scaled(self, t: Any) -> "AnchorTuple":
        return AnchorTuple(anchors=[a * t for a in self.anchors], normalized=False)

    def normalize(self, magnitude: Callable[[LinearElement], float]) -> "AnchorTuple":
        """
        Rescale every anchor to instance magnitude 1.

        :param magnitude: instance-specific size of a single element
        :return: new normalized tuple
        :raises PreconditionError: an anchor has magnitude 0
        """

        scaled = []
        for anchor in self.anchors:
            size = magnitude(anchor)
            if size == 0:
                raise PreconditionError("cannot normalize a zero anchor", witness=anchor)
            scaled.append(anchor / size)
        return AnchorTuple(anchors=scaled, normalized=True)

    def with_first(self, first: LinearElement) -> tuple[LinearElement, ...]:
        return (first, *self.anchors)

