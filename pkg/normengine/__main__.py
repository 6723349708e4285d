from normengine.commands.normengine import main

if __name__ == "__main__":
    main()
