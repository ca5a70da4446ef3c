import pytest

from idtlab.thresholds import ThresholdTable


@pytest.fixture(scope="session")
def threshold_table():
    """The calibrated threshold table shipped with the package."""
    table = ThresholdTable.default()
    if not table.entries:
        pytest.skip(
            "shipped threshold table is empty; run "
            "`idtlab calibrate calibration/calibration.conf` first"
        )
    return table
