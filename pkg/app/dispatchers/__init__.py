"""
Dispatchers module for command routing.

The command dispatcher maps a command name to the library operation behind it
and wraps the result in an OutputRecord, for both the CLI and the HTTP surface.
"""
