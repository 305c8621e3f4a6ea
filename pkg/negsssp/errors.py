class NegSSSPError(Exception):
    pass

class ContractViolation(NegSSSPError, ValueError):
    pass

class WeightBoundExceeded(ContractViolation):
    pass

class GraphFormatError(NegSSSPError, ValueError):
    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = "line %d: %s" % (line_no, message)
        super(GraphFormatError, self).__init__(message)
        self.line_no = line_no

class NegativeWeightRejected(NegSSSPError):
    """
    The oracle was handed a negative weight. Never caused by user input;
    it means a transform upstream produced a bad graph.
    """
    pass

class RecursionDepthExceeded(NegSSSPError):
    def __init__(self, algorithm, depth, limit):
        super(RecursionDepthExceeded, self).__init__(
            "%s recursion reached depth %d (limit %d)" % (algorithm, depth, limit))
        self.algorithm = algorithm
        self.depth = depth
        self.limit = limit

class PreconditionViolated(NegSSSPError):
    def __init__(self, message, witness=None, price=None):
        super(PreconditionViolated, self).__init__(message)
        self.witness = witness
        self.price = price

class RetryBudgetExhausted(NegSSSPError):
    def __init__(self, message, diagnostics=None):
        super(RetryBudgetExhausted, self).__init__(message)
        self.diagnostics = diagnostics or {}

class GenerationFailed(NegSSSPError):
    pass
