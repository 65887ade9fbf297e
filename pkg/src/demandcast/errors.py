"""Exception types shared across the pipeline."""


class DemandcastError(Exception):
    """Base class for all pipeline errors."""


# --- ingest ---------------------------------------------------------------

class MissingColumn(DemandcastError):
    def __init__(self, path, column):
        super().__init__(f"{path}: missing column {column!r}")
        self.path = path
        self.column = column


class NonPositiveValue(DemandcastError):
    def __init__(self, path, row, field, value):
        super().__init__(f"{path} row {row}: {field}={value} must be > 0")
        self.row = row
        self.field = field
        self.value = value


class DuplicateDay(DemandcastError):
    def __init__(self, path, row, key):
        super().__init__(f"{path} row {row}: duplicate day {key}")
        self.row = row
        self.key = key


class MeanExceedsPeak(DemandcastError):
    def __init__(self, path, row, mean_mw, peak_mw):
        super().__init__(
            f"{path} row {row}: mean load {mean_mw:.1f} MW exceeds peak {peak_mw:.1f} MW"
        )
        self.row = row
        self.mean_mw = mean_mw
        self.peak_mw = peak_mw


class IncompleteDay(DemandcastError):
    def __init__(self, city, day, n_samples):
        super().__init__(f"{city} {day}: only {n_samples} hourly samples (< 20)")
        self.city = city
        self.day = day
        self.n_samples = n_samples


class WrongRowCount(DemandcastError):
    def __init__(self, path, found, expected=8760):
        super().__init__(f"{path}: {found} rows, expected {expected}")
        self.found = found
        self.expected = expected


# --- gdp ------------------------------------------------------------------

class SingularFit(DemandcastError):
    """Curve fit failed to converge or carries no growth signal."""


class NonPositiveInput(DemandcastError):
    pass


class MissingStableTable(DemandcastError):
    pass


class MissingState(DemandcastError):
    pass


# --- bau ------------------------------------------------------------------

class MissingWeatherDay(DemandcastError):
    def __init__(self, city, day):
        super().__init__(f"no weather for {city} on {day}")
        self.city = city
        self.day = day


class NoConvergence(DemandcastError):
    pass


class FeatureMismatch(DemandcastError):
    pass


class ZeroVariance(DemandcastError):
    pass


# --- variation ------------------------------------------------------------

class EmptyMonth(DemandcastError):
    def __init__(self, month):
        super().__init__(f"no residuals for month {month}")
        self.month = month


# --- hourly ---------------------------------------------------------------

class EmptyPool(DemandcastError):
    def __init__(self, key):
        super().__init__(f"empty cluster pool for {key}")
        self.key = key


class InfeasibleDay(DemandcastError):
    def __init__(self, peak_target, energy_target):
        super().__init__(
            f"peak {peak_target} MW below mean load {energy_target / 24.0} MW"
        )
        self.peak_target = peak_target
        self.energy_target = energy_target


# --- cooling --------------------------------------------------------------

class MissingMarketYear(DemandcastError):
    pass


class ShareSumViolation(DemandcastError):
    pass


class MissingProfile(DemandcastError):
    pass


# --- ev -------------------------------------------------------------------

class InsufficientHistory(DemandcastError):
    pass


# --- runner ---------------------------------------------------------------

class ComponentLengthMismatch(DemandcastError):
    pass


class MisalignedTimestamps(DemandcastError):
    pass


class IoFailure(DemandcastError):
    pass
