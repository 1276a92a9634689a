from muntzlab.cli import console_main


console_main()
