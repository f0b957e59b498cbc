# egsolve package
