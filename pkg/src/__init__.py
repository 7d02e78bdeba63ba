# Pipeline de Dirac-Bergmann : du lagrangien singulier au flot hamiltonien contraint
