import pytest

from blamelogic import asset_path, load_game


@pytest.fixture(scope="session")
def truck_manual():
    return load_game(asset_path("truck_manual.game").read_text())


@pytest.fixture(scope="session")
def truck_selfdriving():
    return load_game(asset_path("truck_selfdriving.game").read_text())
