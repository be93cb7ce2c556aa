# Output models of the reconf commands
