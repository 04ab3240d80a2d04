from scrollrank.cli import main

raise SystemExit(main())
