from dkpo_lab.cli import main

raise SystemExit(main())
