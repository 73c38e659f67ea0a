import asyncio
import logging
import os
import typing
from concurrent.futures import ThreadPoolExecutor

from dotenv import load_dotenv

from magnus_towers.utils.exceptions import UsageError

load_dotenv()

_logger = logging.getLogger(__name__)


def _env_int(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise UsageError(f"{name} must be at least {minimum}, got {value}")
    return value


class InternalData:
    """Contains the configuration read from the environment (and `.env`) and the helper running partitioned scans."""

    truncation: int = 12
    series_to: int = 12
    prime_workers: int = 1
    log_level: str = "WARNING"

    @classmethod
    def reload(cls) -> None:
        """Re-reads `MAGNUS_TRUNCATION`, `MAGNUS_SERIES_TO`, `MAGNUS_PRIME_WORKERS` and `MAGNUS_LOG_LEVEL`."""
        cls.truncation = _env_int("MAGNUS_TRUNCATION", 12, 2)
        cls.series_to = _env_int("MAGNUS_SERIES_TO", 12, 0)
        cls.prime_workers = _env_int("MAGNUS_PRIME_WORKERS", 1, 1)
        log_level = os.environ.get("MAGNUS_LOG_LEVEL", "WARNING").upper()
        if not isinstance(logging.getLevelName(log_level), int):
            raise UsageError(f"MAGNUS_LOG_LEVEL must be a logging level name, got {log_level!r}")
        cls.log_level = log_level

    @classmethod
    def gather(
        cls, function: typing.Callable[..., typing.Any], partitions: typing.Sequence[tuple], workers: int = None
    ) -> typing.List[typing.Any]:
        """
        Runs `function(*partition)` for every partition concurrently and returns the results in partition order.

        Parameters:
            function (typing.Callable): A pure function; it must not depend on which worker runs it.
            partitions (typing.Sequence[tuple]): The positional arguments of each call.
            workers (int, optional): Size of the thread pool, `prime_workers` by default.

        Returns:
            typing.List[typing.Any]: One result per partition, in the order the partitions were given.
        """
        workers = workers or cls.prime_workers
        if workers <= 1 or len(partitions) <= 1:
            return [function(*partition) for partition in partitions]

        async def _gather() -> list:
            loop = asyncio.get_running_loop()
            with ThreadPoolExecutor(max_workers=workers) as executor:
                return await asyncio.gather(
                    *[loop.run_in_executor(executor, function, *partition) for partition in partitions]
                )

        _logger.debug("scanning %d partitions on %d workers", len(partitions), workers)
        return list(asyncio.run(_gather()))


try:
    InternalData.reload()
except UsageError as error:
    _logger.warning("keeping the default configuration: %s", error)
