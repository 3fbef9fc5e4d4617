namespace qf {}
