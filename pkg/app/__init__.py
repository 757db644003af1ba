"""Mean-payoff stochastic game solver."""
