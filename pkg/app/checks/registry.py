import logging
from typing import Dict, List, Optional, Sequence, Type

from app.checks.base_check import BaseCheck

logger = logging.getLogger(__name__)


class CheckRegistry:
    """
    Registry of verification checks.

    Checks register themselves using the @CheckRegistry.register decorator
    and are returned by their order attribute, unordered checks last.
    """

    _checks: Dict[str, Type[BaseCheck]] = {}

    @classmethod
    def register(cls, check_class: Type[BaseCheck]) -> Type[BaseCheck]:
        """
        Decorator to register a check class.

        Args:
            check_class: The check class to register

        Returns:
            The same check class (so it can be used as a decorator)
        """
        if not getattr(check_class, 'slug', None):
            raise ValueError(f"Check {check_class.__name__} must define a 'slug' attribute")

        if check_class.slug in cls._checks:
            raise ValueError(f"Check with slug '{check_class.slug}' is already registered")

        cls._checks[check_class.slug] = check_class
        logger.debug("Registered check: %s (%s)", check_class.name, check_class.slug)
        return check_class

    @classmethod
    def _order(cls, check_class: Type[BaseCheck]):
        order = check_class.order
        return (order is None, order or 0, check_class.slug)

    @classmethod
    def get_check(cls, slug: str) -> Optional[BaseCheck]:
        check_class = cls._checks.get(slug)
        if check_class:
            return check_class()
        return None

    @classmethod
    def get_checks(cls, slugs: Optional[Sequence[str]] = None) -> List[BaseCheck]:
        """
        Instantiate checks in report order.

        Args:
            slugs: Requested slugs, or None / ['all'] for every check

        Returns:
            List of check instances

        Raises:
            ValueError: an unknown slug was requested
        """
        if not slugs or 'all' in slugs:
            selected = list(cls._checks.values())
        else:
            unknown = [s for s in slugs if s not in cls._checks]
            if unknown:
                raise ValueError(f"Unknown check(s): {', '.join(unknown)}")
            selected = [cls._checks[s] for s in dict.fromkeys(slugs)]
        return [check_class() for check_class in sorted(selected, key=cls._order)]

    @classmethod
    def get_all_checks(cls) -> Dict[str, Type[BaseCheck]]:
        return cls._checks.copy()

    @classmethod
    def slugs(cls) -> List[str]:
        return [check_class.slug for check_class in sorted(cls._checks.values(), key=cls._order)]

    @classmethod
    def check_exists(cls, slug: str) -> bool:
        return slug in cls._checks
