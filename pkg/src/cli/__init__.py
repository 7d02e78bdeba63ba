# Interface en ligne de commande: derive, bracket, integrate, verify
