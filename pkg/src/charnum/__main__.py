from charnum.cli import main

main()
