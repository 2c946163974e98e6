# plumbline tests
