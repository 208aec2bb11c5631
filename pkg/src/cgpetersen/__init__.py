"""Conway-Gordon type identities for the Petersen family of graphs."""

__version__ = "0.1.0"
