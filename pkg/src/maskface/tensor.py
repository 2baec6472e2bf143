"""Dense float32 tensors and a reverse-mode gradient tape.

Forward operations (see :mod:`maskface.ops`) append records to the innermost
active :class:`Tape`. ``tape.backward(loss)`` walks the records in reverse,
applying each record's backward rule and accumulating gradients into the
``grad`` slot of every leaf tensor that requires them. Code that runs outside
a ``with Tape():`` block is never recorded, which is how evaluation passes
stay allocation-free.
"""

import numpy as np

from .errors import ContractError, NumericError

DTYPE = np.float32

_debug_finite = False


def set_debug_finite(enabled: bool) -> bool:
    """Toggle post-op finiteness assertions; returns the previous setting."""
    global _debug_finite
    previous = _debug_finite
    _debug_finite = bool(enabled)
    return previous


class Tensor:
    """N-dimensional float32 array with an optional gradient slot.

    ``requires_grad`` doubles as the trainable flag on model parameters:
    optimizers skip tensors where it is False, and the tape does not record
    operations whose inputs all have it False.
    """

    __slots__ = ("data", "requires_grad", "grad")

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.ascontiguousarray(data, dtype=DTYPE)
        self.requires_grad = bool(requires_grad)
        self.grad = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    def item(self) -> float:
        if self.data.size != 1:
            raise ContractError(f"item() on tensor of shape {self.shape}")
        return float(self.data.reshape(()))

    def numpy(self) -> np.ndarray:
        """Copy of the underlying array."""
        return self.data.copy()

    def accumulate_grad(self, g: np.ndarray) -> None:
        if self.grad is None:
            self.grad = np.array(g, dtype=DTYPE, copy=True)
        else:
            self.grad += g

    def zero_grad(self) -> None:
        self.grad = None

    def __repr__(self):
        flags = ", requires_grad=True" if self.requires_grad else ""
        return f"Tensor(shape={tuple(self.shape)}{flags})"


class TapeRecord:
    """One executed operation: kind, input/output tensors, backward rule."""

    __slots__ = ("op", "inputs", "output", "backward_fn")

    def __init__(self, op, inputs, output, backward_fn):
        self.op = op
        self.inputs = inputs
        self.output = output
        self.backward_fn = backward_fn


_tape_stack: list["Tape"] = []


def active_tape():
    return _tape_stack[-1] if _tape_stack else None


class Tape:
    """Ordered trace of recorded operations; consumed by :meth:`backward`."""

    def __init__(self):
        self.records: list[TapeRecord] = []

    def __enter__(self):
        _tape_stack.append(self)
        return self

    def __exit__(self, exc_type, exc, tb):
        popped = _tape_stack.pop()
        assert popped is self, "tapes must be exited in LIFO order"
        return False

    def __len__(self):
        return len(self.records)

    def backward(self, loss: Tensor) -> None:
        """Populate ``grad`` on every requires_grad leaf reachable from `loss`.

        Gradients fan-in additively: a tensor consumed by several records (or
        twice by one record) receives the sum of all path contributions. The
        trace is cleared afterwards.
        """
        if loss.size != 1:
            raise ContractError(f"backward needs a scalar loss, got shape {loss.shape}")
        if not self.records:
            raise ContractError("backward on an empty trace")
        produced = {id(r.output) for r in self.records}
        if id(loss) not in produced:
            raise ContractError("loss tensor was not produced through this trace")

        # Pending gradients for intermediate tensors, keyed by identity. The
        # records hold references, so ids stay unique while we walk.
        pending = {id(loss): np.ones_like(loss.data)}
        for rec in reversed(self.records):
            grad_out = pending.pop(id(rec.output), None)
            if grad_out is None:
                continue
            input_grads = rec.backward_fn(grad_out)
            for tensor, g in zip(rec.inputs, input_grads):
                if g is None or not tensor.requires_grad:
                    continue
                if id(tensor) in produced:
                    acc = pending.get(id(tensor))
                    pending[id(tensor)] = g if acc is None else acc + g
                else:
                    tensor.accumulate_grad(g)
        self.records.clear()


def backward(loss: Tensor, tape: Tape | None = None) -> None:
    """Run reverse-mode differentiation on `tape` (default: the active one)."""
    if tape is None:
        tape = active_tape()
        if tape is None:
            raise ContractError("backward called with no active tape")
    tape.backward(loss)


def record_result(op: str, inputs: tuple, out_data: np.ndarray, backward_fn) -> Tensor:
    """Wrap an op's forward result, recording it when gradients are being traced."""
    if _debug_finite and not np.isfinite(out_data).all():
        raise NumericError(f"{op} produced non-finite values")
    out = Tensor(out_data)
    tape = active_tape()
    if tape is not None and any(t.requires_grad for t in inputs):
        out.requires_grad = True
        tape.records.append(TapeRecord(op, inputs, out, backward_fn))
    return out


def zero_grads(params) -> None:
    """Clear the grad slot of every tensor in `params`."""
    for p in params:
        p.grad = None
