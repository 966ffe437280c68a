"""Bundled fixture documents for the Hall Booking System family."""

from importlib import resources

VARIANT_MODEL = "hall-booking.vml.xml"
ACTIVITY_PRODUCT = "hall-booking-activity.product.xml"
PRINTED_PAPER_ANSWERS = "printed-paper.answers.json"
ACADEMIC_ANSWERS = "academic-complete.answers.json"


def load(name: str) -> bytes:
    """Bytes of a bundled data file."""
    return resources.files(__package__).joinpath(name).read_bytes()
