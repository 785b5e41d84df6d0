"""Exception types shared across the random subsystem."""


class IotRngError(Exception):
    """Base class for all subsystem errors."""


class UnknownAlgorithmError(IotRngError, ValueError):
    """Requested generator name is not registered for the given API class."""


class InsufficientEntropyError(IotRngError, ValueError):
    """Seed material claims fewer entropy bits than the required strength."""


class SeedTooShortError(IotRngError, ValueError):
    """Seed material is shorter than the algorithm's minimum seed length."""


class NotInstantiatedError(IotRngError, RuntimeError):
    """Generator state was wiped (or never set up); no output may be produced."""


class RequestTooLargeError(IotRngError, ValueError):
    """A single generate request exceeds the algorithm's per-request limit."""


class ReseedRequiredError(IotRngError, RuntimeError):
    """The reseed counter is exhausted; fresh seed material must be supplied."""


class ReseedDisabledError(IotRngError, RuntimeError):
    """Reseeding was requested but the instance's reseed policy forbids it."""


class WrongAlgorithmError(IotRngError, TypeError):
    """Operation applies to a different generator algorithm."""


class EventTooLargeError(IotRngError, ValueError):
    """Entropy event payload exceeds the 32-byte pool event limit."""


class EntropyExhaustedError(IotRngError, RuntimeError):
    """All entropy sources became unavailable before the request was met."""


class ReadWithoutPowerCycleError(IotRngError, RuntimeError):
    """A memory power-up read was attempted without an intervening power-off."""


class PretestFailedError(IotRngError, ValueError):
    """A statistical test's precondition on the input sequence failed."""
