"""Exception hierarchy shared by every module."""


class GraphProductError(Exception):
    pass


class ValidationError(GraphProductError, ValueError):
    """Malformed input: bad graph, bad table, bad word."""


class OrderCapExceeded(GraphProductError):
    def __init__(self, order: int, cap: int, what: str = "group"):
        super().__init__(f"{what} of order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap
