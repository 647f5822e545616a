// populated as the corresponding module lands
