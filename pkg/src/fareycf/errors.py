"""Exception types shared across the package."""


class FareyCFError(Exception):
    """Base class for package-specific errors."""


class DigitBudgetError(FareyCFError):
    """A digit query ran past the available partial quotients."""


class PrecisionError(FareyCFError):
    """An enclosure straddles a boundary and deepening once did not resolve it."""


class RegionParseError(FareyCFError):
    """Region grammar error; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonRecurrenceError(FareyCFError):
    """Orbit did not enter the region within the step cap.

    Presumed non-recurrent start (a Lebesgue-null event for proper regions);
    carries the structured report the caller asked for.
    """

    def __init__(self, region_text, start_step, steps_tried):
        super().__init__(
            f"orbit did not enter {region_text!r} within {steps_tried} steps "
            f"from step {start_step}; presumed non-recurrent"
        )
        self.region_text = region_text
        self.start_step = start_step
        self.steps_tried = steps_tried
