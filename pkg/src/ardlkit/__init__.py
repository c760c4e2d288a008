"""ARDL bounds-testing workflow for oil price / COVID-19 / VIX / EPU daily series."""

__version__ = "0.1.0"
