from .domains import FIXTURE_NAMES, NamedFixture, all_fixtures, fixture

__all__ = ["FIXTURE_NAMES", "NamedFixture", "all_fixtures", "fixture"]
