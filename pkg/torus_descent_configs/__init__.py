# YAML configuration files for torus_descent; loaded by torus_descent.load_config.
