class InputError(ValueError):
    """Malformed or inconsistent input (bad file, invalid map, violated precondition).

    The CLI maps this to exit code 2.
    """
