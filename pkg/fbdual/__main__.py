from fbdual.main import main

main()
