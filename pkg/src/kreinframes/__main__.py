from kreinframes.cli import main

main()
