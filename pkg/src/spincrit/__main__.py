from spincrit.cli import main_entry

main_entry()
