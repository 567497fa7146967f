# Mission scripts, trace rows and results
