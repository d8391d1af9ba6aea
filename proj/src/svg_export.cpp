// svg export
