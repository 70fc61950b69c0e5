"""Enable ``python -m graph_path_integral``."""

from graph_path_integral.cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
