from magnus_towers.cli import main

raise SystemExit(main())
