from numpy import int64

# exact integers: numpy object arrays holding Python ints
type_exact_int = object

# group elements are indices into a multiplication table
type_group_element = int64
