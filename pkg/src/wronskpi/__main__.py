from wronskpi.cli import main

main()
