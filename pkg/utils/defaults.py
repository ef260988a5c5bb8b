from manifold.modes import Family_Id, Tree_Strategy

# presentations
tree_strategy = Tree_Strategy.LAST
homomorphism_generator_limit = 6
small_group_max_order = 12


# symmetry: rotation step used by the table command
def rotation_step(family: Family_Id, n: int) -> int:
    if family == Family_Id.M25 and n % 2 == 0:
        return 2
    return 1


# table
table_first = 3
table_last = 6
table_jobs = 1
