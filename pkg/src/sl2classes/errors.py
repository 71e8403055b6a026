"""Exception types raised by the package."""


class NotUnimodular(ValueError):
    """A 2x2 matrix whose determinant is not 1 within tolerance."""


class BoundaryAmbiguous(ValueError):
    """Classification sits inside the tolerance band between two class types."""


class FloatAngleUndecidable(ValueError):
    """A float-backed parameter lies too close to an interval boundary."""


class ParseError(ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f": {text!r}" if text else ""))
