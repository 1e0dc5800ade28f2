"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: InputError -> 2, ResourceError -> 3.
InvariantError means an internal identity failed and is a bug or a
malformed enumerator, never a user mistake.
"""


class ZkError(Exception):
    pass


class InputError(ZkError, ValueError):
    pass


class ResourceError(ZkError, RuntimeError):
    pass


class InvariantError(ZkError, AssertionError):
    pass
